#include "ttfem/vtk.hpp"

#include <fstream>
#include <sstream>

#include "ttfem/error.hpp"

namespace ttfem {

namespace {

void write_header(std::ostream& os, const std::string& title) {
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
}

void write_points(std::ostream& os, const std::vector<Vec2>& pts) {
  os << "POINTS " << pts.size() << " double\n";
  for (const Vec2& p : pts) os << p.x() << " " << p.y() << " 0\n";
}

}  // namespace

void VtkWriter::add_cell_scalar(const std::string& name, std::vector<double> values) {
  cell_scalars_.push_back({name, std::move(values)});
}

void VtkWriter::add_cell_vector(const std::string& name, std::vector<Vec2> values) {
  cell_vectors_.push_back({name, std::move(values)});
}

void VtkWriter::add_point_vector(const std::string& name, std::vector<Vec2> values) {
  point_vectors_.push_back({name, std::move(values)});
}

void VtkWriter::write(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os.precision(17);
  write_header(os, "ttfem fields");
  os << "DATASET UNSTRUCTURED_GRID\n";
  write_points(os, mesh_->vertices);
  const int t = mesh_->n_elements();
  os << "CELLS " << t << " " << 4 * t << "\n";
  for (const auto& tri : mesh_->triangles) os << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  os << "CELL_TYPES " << t << "\n";
  for (int i = 0; i < t; ++i) os << "5\n";

  os << "CELL_DATA " << t << "\n";
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int r : mesh_->element_region) os << r << "\n";
  for (const auto& f : cell_scalars_) {
    os << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : f.values) os << v << "\n";
  }
  for (const auto& f : cell_vectors_) {
    os << "VECTORS " << f.name << " double\n";
    for (const Vec2& v : f.values) os << v.x() << " " << v.y() << " 0\n";
  }
  if (!point_vectors_.empty()) {
    os << "POINT_DATA " << mesh_->n_vertices() << "\n";
    for (const auto& f : point_vectors_) {
      os << "VECTORS " << f.name << " double\n";
      for (const Vec2& v : f.values) os << v.x() << " " << v.y() << " 0\n";
    }
  }
}

void write_mesh_vtk(const Mesh& mesh, const std::string& path) { VtkWriter(mesh).write(path); }

Mesh read_mesh_vtk(const std::string& path, const BoundaryTagger& tagger) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open mesh file '" + path + "'");
  std::string token;
  std::vector<Vec2> points;
  std::vector<std::array<int, 3>> cells;
  std::vector<int> regions;
  while (is >> token) {
    if (token == "POINTS") {
      int n;
      std::string type;
      is >> n >> type;
      points.resize(n);
      for (int i = 0; i < n; ++i) {
        double x, y, z;
        is >> x >> y >> z;
        points[i] = Vec2(x, y);
      }
    } else if (token == "CELLS") {
      int n, total;
      is >> n >> total;
      cells.reserve(n);
      for (int i = 0; i < n; ++i) {
        int cnt;
        is >> cnt;
        if (cnt != 3) throw ConfigError("VTK mesh import supports triangles only");
        std::array<int, 3> tri;
        is >> tri[0] >> tri[1] >> tri[2];
        cells.push_back(tri);
      }
    } else if (token == "SCALARS") {
      std::string name, type;
      is >> name >> type;
      // swallow optional component count and LOOKUP_TABLE line
      std::string rest;
      std::getline(is, rest);
      is >> rest >> rest;
      if (name == "region") {
        regions.resize(cells.size());
        for (auto& r : regions) is >> r;
      } else {
        double dummy;
        for (size_t i = 0; i < cells.size(); ++i) is >> dummy;
      }
    }
  }
  if (points.empty() || cells.empty()) throw ConfigError("VTK mesh import: no POINTS/CELLS found");
  return build_mesh(std::move(points), std::move(cells), tagger, std::move(regions));
}

void write_polyline_vtk(const std::vector<Vec2>& points, const std::vector<double>& times,
                        const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os.precision(17);
  write_header(os, "ttfem trajectory");
  os << "DATASET POLYDATA\n";
  write_points(os, points);
  os << "LINES 1 " << points.size() + 1 << "\n" << points.size();
  for (size_t i = 0; i < points.size(); ++i) os << " " << i;
  os << "\n";
  os << "POINT_DATA " << points.size() << "\n";
  os << "SCALARS time double 1\nLOOKUP_TABLE default\n";
  for (double t : times) os << t << "\n";
}

}  // namespace ttfem
