#include "ttfem/problem.hpp"

#include <Eigen/Eigenvalues>

#include "ttfem/error.hpp"

namespace ttfem {

Material Material::isotropic(double k, double porosity) {
  Material m;
  m.K0 = k * Mat2::Identity();
  m.porosity = porosity;
  return m;
}

Material Material::tensor(const Mat2& K, double porosity) {
  Material m;
  m.K0 = K;
  m.porosity = porosity;
  return m;
}

Material Material::expressions(Expression kxx, Expression kxy, Expression kyy, double porosity) {
  Material m;
  m.constant_ = false;
  m.kxx_ = std::move(kxx);
  m.kxy_ = std::move(kxy);
  m.kyy_ = std::move(kyy);
  m.porosity = porosity;
  return m;
}

Mat2 Material::K(const Vec2& x) const {
  if (constant_) return K0;
  Mat2 K;
  K(0, 0) = kxx_(x.x(), x.y());
  K(0, 1) = K(1, 0) = kxy_(x.x(), x.y());
  K(1, 1) = kyy_(x.x(), x.y());
  return K;
}

const Material& ProblemSpec::material(int region) const {
  auto it = regions.find(region);
  if (it == regions.end())
    throw ConfigError("mesh region " + std::to_string(region) + " has no material data");
  return it->second;
}

namespace {

void check_spd(const Mat2& K, const std::string& where) {
  if (std::abs(K(0, 1) - K(1, 0)) > 1e-14 * K.norm())
    throw ConfigError("conductivity tensor not symmetric " + where);
  Eigen::SelfAdjointEigenSolver<Mat2> es(K);
  if (es.eigenvalues()(0) <= 0.0)
    throw ConfigError("conductivity tensor not positive definite " + where);
}

}  // namespace

void ProblemSpec::validate(const Mesh& mesh) const {
  for (const auto& [id, mat] : regions) {
    if (!(mat.porosity > 0.0 && mat.porosity <= 1.0))
      throw ConfigError("porosity of region " + std::to_string(id) + " outside (0,1]");
    if (mat.constant()) check_spd(mat.K(Vec2::Zero()), "in region " + std::to_string(id));
  }
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Material& mat = material(mesh.element_region[e]);
    if (!mat.constant()) check_spd(mat.K(mesh.barycenter(e)), "in region " +
                                   std::to_string(mesh.element_region[e]));
  }
  int e0 = locate_point(mesh, release_point);
  auto c = mesh.coords(e0);
  auto l = barycentric(c[0], c[1], c[2], release_point);
  double min_l = std::min({l[0], l[1], l[2]});
  if (min_l < 1e-12) {
    // On an element edge: still interior unless the edge is a boundary face.
    for (int j = 0; j < 3; ++j) {
      const Face& f = mesh.faces[mesh.element_faces[e0][j]];
      if (f.right != -1) continue;
      auto g = face_geometry(mesh, mesh.element_faces[e0][j]);
      if (std::abs(g.normal.dot(release_point - g.a)) < 1e-12 * g.length)
        throw ConfigError("release point lies on the domain boundary");
    }
  }
}

}  // namespace ttfem
