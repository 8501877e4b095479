#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ttfem/mesh.hpp"
#include "ttfem/geometry.hpp"

namespace ttfem {

// Mixed pair BDM_{k+1} velocity x discontinuous P_k pressure, k in {0,1}.
//
// Velocity degrees of freedom are moments of the normal trace against
// orthonormal Legendre polynomials in the global parametrisation of each
// face, plus (for k=1) three interior moments. Because every functional is
// defined on the face itself, neighbouring elements dualise against the same
// functionals and H(div) conformity needs no orientation bookkeeping: the
// local bases are found by inverting the DOF Vandermonde matrix on each
// physical element.
class MixedSpace {
 public:
  const Mesh* mesh = nullptr;
  int k = 0;

  int vel_per_face = 0;       // k + 2 moments per face
  int vel_interior = 0;       // 0 (k=0) or 3 (k=1)
  int pr_per_elem = 0;        // 1 or 3
  int n_mono = 0;             // monomials in P_{k+1}
  int n_vel = 0, n_pr = 0;
  int n_vel_free = 0;

  std::vector<char> vel_constrained;  // Neumann face moments pinned to zero
  std::vector<int> vel_free_index;    // -1 when constrained

  // Per element: local frame (barycenter, diameter) and the basis coefficient
  // matrix, rows = local basis functions, columns = [x-monomials | y-monomials].
  std::vector<Vec2> center;
  std::vector<double> scale;
  std::vector<Eigen::MatrixXd> vel_basis;

  int n_vel_local() const { return 3 * vel_per_face + vel_interior; }
  int vel_global_dof(int e, int l) const {
    if (l < 3 * vel_per_face)
      return mesh->element_faces[e][l / vel_per_face] * vel_per_face + l % vel_per_face;
    return mesh->n_faces() * vel_per_face + e * vel_interior + (l - 3 * vel_per_face);
  }
  int pr_global_dof(int e, int m) const { return e * pr_per_elem + m; }

  // Monomial helpers in the local frame X = (x - center)/scale.
  Eigen::VectorXd monomials(int e, const Vec2& x) const;
  void monomial_gradients(int e, const Vec2& x, Eigen::VectorXd& dX, Eigen::VectorXd& dY) const;

  Vec2 vel_basis_value(int e, int l, const Vec2& x) const;
  double vel_basis_div(int e, int l, const Vec2& x) const;
  double pr_basis_value(int e, int m, const Vec2& x) const;
  Vec2 pr_basis_grad(int e, int m, const Vec2& x) const;

  // DOFs of an arbitrary velocity field (element-aware evaluator), used for
  // interpolation into the space. Face moments are taken from the left
  // element, so discontinuous sources must have single-valued normal traces.
  Eigen::VectorXd interpolate_velocity(
      const std::function<Vec2(int elem, const Vec2&)>& f) const;
};

MixedSpace build_space(const Mesh& mesh, int k);

// Coefficient view of a primal or adjoint solution. Caches each element's
// velocity/pressure polynomials for O(1) point evaluation.
class MixedSolution {
 public:
  const MixedSpace* space = nullptr;
  Eigen::VectorXd vel;  // full length, constrained entries zero
  Eigen::VectorXd pr;

  MixedSolution() = default;
  MixedSolution(const MixedSpace& s, Eigen::VectorXd v, Eigen::VectorXd p);

  Vec2 velocity(int elem, const Vec2& x) const;
  Mat2 velocity_grad(int elem, const Vec2& x) const;
  double velocity_div(int elem, const Vec2& x) const;
  double pressure(int elem, const Vec2& x) const;
  Vec2 pressure_grad(int elem, const Vec2& x) const;
  double pressure_mean(int elem) const;

  // u|elem = a + G x (global coordinates); only valid for k = 0 fields.
  void linear_coeffs(int elem, Vec2& a, Mat2& G) const;

 private:
  std::vector<Eigen::Matrix<double, 2, Eigen::Dynamic>> vel_poly_;
  std::vector<Eigen::VectorXd> pr_poly_;
  void check_point(int elem, const Vec2& x) const;
};

}  // namespace ttfem
