#pragma once

#include <map>

#include "ttfem/expression.hpp"
#include "ttfem/geometry.hpp"
#include "ttfem/mesh.hpp"

namespace ttfem {

// Hydraulic conductivity and porosity of one rock type. K may vary in space
// (expression entries) but is symmetric everywhere; the shipped examples use
// region-wise constants.
class Material {
 public:
  Material() = default;
  static Material isotropic(double k, double porosity);
  static Material tensor(const Mat2& K, double porosity);
  static Material expressions(Expression kxx, Expression kxy, Expression kyy, double porosity);

  Mat2 K(const Vec2& x) const;
  Mat2 K_inv(const Vec2& x) const { return K(x).inverse(); }
  bool constant() const { return constant_; }
  double porosity = 1.0;

 private:
  bool constant_ = true;
  Mat2 K0 = Mat2::Identity();
  Expression kxx_, kxy_, kyy_;
};

struct ProblemSpec {
  std::map<int, Material> regions;
  Expression source;     // f(x, y)
  Expression dirichlet;  // g_D(x, y), head units
  Vec2 release_point = Vec2::Zero();

  const Material& material(int region) const;
  double porosity(int region) const { return material(region).porosity; }

  // Eigenvalue bounds of K and the porosity range, sampled over the mesh when
  // K varies; also checks the release point is strictly interior and every
  // mesh region has data.
  void validate(const Mesh& mesh) const;
};

}  // namespace ttfem
