#pragma once

#include <string>
#include <vector>

#include "ttfem/mesh.hpp"

namespace ttfem {

// Legacy VTK ASCII unstructured-grid output. Cell data fields are appended in
// the order they were added; region ids are always written first.
class VtkWriter {
 public:
  explicit VtkWriter(const Mesh& mesh) : mesh_(&mesh) {}

  void add_cell_scalar(const std::string& name, std::vector<double> values);
  void add_cell_vector(const std::string& name, std::vector<Vec2> values);
  void add_point_vector(const std::string& name, std::vector<Vec2> values);
  void write(const std::string& path) const;

 private:
  const Mesh* mesh_;
  struct CellScalar {
    std::string name;
    std::vector<double> values;
  };
  struct VectorField {
    std::string name;
    std::vector<Vec2> values;
  };
  std::vector<CellScalar> cell_scalars_;
  std::vector<VectorField> cell_vectors_;
  std::vector<VectorField> point_vectors_;
};

void write_mesh_vtk(const Mesh& mesh, const std::string& path);

// Reads POINTS / CELLS / CELL_TYPES (+ optional CELL_DATA region scalars)
// written by write_mesh_vtk or compatible tools. Boundary tags are assigned
// by the tagger since the format does not carry them.
Mesh read_mesh_vtk(const std::string& path, const BoundaryTagger& tagger);

// Trajectory polyline with per-point time stamps as point data.
void write_polyline_vtk(const std::vector<Vec2>& points, const std::vector<double>& times,
                        const std::string& path);

}  // namespace ttfem
