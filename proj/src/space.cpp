#include "ttfem/space.hpp"

#include <cmath>

#include "ttfem/error.hpp"
#include "ttfem/quadrature.hpp"

namespace ttfem {

namespace {

constexpr int kFaceQuad = 5;

// Orthonormal Legendre polynomials on [0,1].
double legendre01(int m, double s) {
  switch (m) {
    case 0: return 1.0;
    case 1: return std::sqrt(3.0) * (2.0 * s - 1.0);
    case 2: return std::sqrt(5.0) * (6.0 * s * s - 6.0 * s + 1.0);
    default: throw NumericalError("face moment order out of range");
  }
}

}  // namespace

Eigen::VectorXd MixedSpace::monomials(int e, const Vec2& x) const {
  const double X = (x.x() - center[e].x()) / scale[e];
  const double Y = (x.y() - center[e].y()) / scale[e];
  Eigen::VectorXd m(n_mono);
  m(0) = 1.0;
  m(1) = X;
  m(2) = Y;
  if (n_mono > 3) {
    m(3) = X * X;
    m(4) = X * Y;
    m(5) = Y * Y;
  }
  return m;
}

void MixedSpace::monomial_gradients(int e, const Vec2& x, Eigen::VectorXd& dX,
                                    Eigen::VectorXd& dY) const {
  const double inv = 1.0 / scale[e];
  const double X = (x.x() - center[e].x()) / scale[e];
  const double Y = (x.y() - center[e].y()) / scale[e];
  dX.setZero(n_mono);
  dY.setZero(n_mono);
  dX(1) = inv;
  dY(2) = inv;
  if (n_mono > 3) {
    dX(3) = 2.0 * X * inv;
    dX(4) = Y * inv;
    dY(4) = X * inv;
    dY(5) = 2.0 * Y * inv;
  }
}

Vec2 MixedSpace::vel_basis_value(int e, int l, const Vec2& x) const {
  Eigen::VectorXd m = monomials(e, x);
  const auto& B = vel_basis[e];
  return Vec2(B.row(l).head(n_mono).dot(m), B.row(l).tail(n_mono).dot(m));
}

double MixedSpace::vel_basis_div(int e, int l, const Vec2& x) const {
  Eigen::VectorXd dX, dY;
  monomial_gradients(e, x, dX, dY);
  const auto& B = vel_basis[e];
  return B.row(l).head(n_mono).dot(dX) + B.row(l).tail(n_mono).dot(dY);
}

double MixedSpace::pr_basis_value(int e, int m, const Vec2& x) const {
  return monomials(e, x)(m);  // pressure uses the low-order monomials directly
}

Vec2 MixedSpace::pr_basis_grad(int e, int m, const Vec2& x) const {
  Eigen::VectorXd dX, dY;
  monomial_gradients(e, x, dX, dY);
  return Vec2(dX(m), dY(m));
}

MixedSpace build_space(const Mesh& mesh, int k) {
  if (k != 0 && k != 1) throw ConfigError("unsupported order k=" + std::to_string(k));
  MixedSpace s;
  s.mesh = &mesh;
  s.k = k;
  s.vel_per_face = k + 2;
  s.vel_interior = k == 0 ? 0 : 3;
  s.pr_per_elem = k == 0 ? 1 : 3;
  s.n_mono = k == 0 ? 3 : 6;
  s.n_vel = mesh.n_faces() * s.vel_per_face + mesh.n_elements() * s.vel_interior;
  s.n_pr = mesh.n_elements() * s.pr_per_elem;

  s.vel_constrained.assign(s.n_vel, 0);
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (mesh.faces[f].tag == BoundaryTag::Neumann)
      for (int m = 0; m < s.vel_per_face; ++m) s.vel_constrained[f * s.vel_per_face + m] = 1;
  s.vel_free_index.assign(s.n_vel, -1);
  int free = 0;
  for (int i = 0; i < s.n_vel; ++i)
    if (!s.vel_constrained[i]) s.vel_free_index[i] = free++;
  s.n_vel_free = free;

  s.center.resize(mesh.n_elements());
  s.scale.resize(mesh.n_elements());
  s.vel_basis.resize(mesh.n_elements());

  const int nloc = s.n_vel_local();
  const auto& fq = gauss01(kFaceQuad);
  const auto& vq = triangle_rule();

  for (int e = 0; e < mesh.n_elements(); ++e) {
    s.center[e] = mesh.barycenter(e);
    s.scale[e] = mesh.element_diameter(e);

    // DOF Vandermonde: rows = functionals, columns = monomial vector fields
    // (e_x * mono_j, then e_y * mono_j).
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nloc, 2 * s.n_mono);
    for (int j = 0; j < 3; ++j) {
      const Face& face = mesh.faces[mesh.element_faces[e][j]];
      const Vec2 a = mesh.vertices[face.v[0]], b = mesh.vertices[face.v[1]];
      const Vec2 n = rot_cw(b - a).normalized();
      for (const auto& qp : fq) {
        const Vec2 x = a + qp.s * (b - a);
        Eigen::VectorXd mono = s.monomials(e, x);
        for (int m = 0; m < s.vel_per_face; ++m) {
          const double wleg = qp.w * legendre01(m, qp.s);
          const int row = j * s.vel_per_face + m;
          D.row(row).head(s.n_mono) += wleg * n.x() * mono.transpose();
          D.row(row).tail(s.n_mono) += wleg * n.y() * mono.transpose();
        }
      }
    }
    if (s.vel_interior > 0) {
      auto c = mesh.coords(e);
      const double area = mesh.element_area(e);
      // Constant gradients of the barycentric coordinates.
      std::array<Vec2, 3> gl;
      gl[0] = rot_cw(c[2] - c[1]) / (2.0 * area);
      gl[1] = rot_cw(c[0] - c[2]) / (2.0 * area);
      gl[2] = rot_cw(c[1] - c[0]) / (2.0 * area);
      for (const auto& qp : vq) {
        const Vec2 x = qp.l0 * c[0] + qp.l1 * c[1] + qp.l2 * c[2];
        Eigen::VectorXd mono = s.monomials(e, x);
        const double w = qp.w;  // relative to |area|
        const int row0 = 3 * s.vel_per_face;
        D.row(row0).head(s.n_mono) += w * mono.transpose();
        D.row(row0 + 1).tail(s.n_mono) += w * mono.transpose();
        // curl of the cubic bubble l0*l1*l2, scaled by the element diameter.
        Vec2 grad_b = qp.l1 * qp.l2 * gl[0] + qp.l0 * qp.l2 * gl[1] + qp.l0 * qp.l1 * gl[2];
        Vec2 cb = s.scale[e] * Vec2(grad_b.y(), -grad_b.x());
        D.row(row0 + 2).head(s.n_mono) += w * cb.x() * mono.transpose();
        D.row(row0 + 2).tail(s.n_mono) += w * cb.y() * mono.transpose();
      }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
    if (!lu.isInvertible())
      throw NumericalError("BDM DOF matrix singular on element " + std::to_string(e));
    // Row l of the basis matrix: coefficients of the function dual to DOF l.
    s.vel_basis[e] = lu.inverse().transpose();
  }
  return s;
}

Eigen::VectorXd MixedSpace::interpolate_velocity(
    const std::function<Vec2(int elem, const Vec2&)>& f) const {
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(n_vel);
  const auto& fq = gauss01(kFaceQuad);
  for (int face = 0; face < mesh->n_faces(); ++face) {
    const Face& fc = mesh->faces[face];
    const Vec2 a = mesh->vertices[fc.v[0]], b = mesh->vertices[fc.v[1]];
    const Vec2 n = rot_cw(b - a).normalized();
    for (const auto& qp : fq) {
      const Vec2 x = a + qp.s * (b - a);
      const double un = f(fc.left, x).dot(n);
      for (int m = 0; m < vel_per_face; ++m)
        dofs[face * vel_per_face + m] += qp.w * legendre01(m, qp.s) * un;
    }
  }
  if (vel_interior > 0) {
    const auto& vq = triangle_rule();
    for (int e = 0; e < mesh->n_elements(); ++e) {
      auto c = mesh->coords(e);
      const double area = mesh->element_area(e);
      std::array<Vec2, 3> gl;
      gl[0] = rot_cw(c[2] - c[1]) / (2.0 * area);
      gl[1] = rot_cw(c[0] - c[2]) / (2.0 * area);
      gl[2] = rot_cw(c[1] - c[0]) / (2.0 * area);
      const int base = mesh->n_faces() * vel_per_face + e * vel_interior;
      for (const auto& qp : vq) {
        const Vec2 x = qp.l0 * c[0] + qp.l1 * c[1] + qp.l2 * c[2];
        const Vec2 v = f(e, x);
        dofs[base] += qp.w * v.x();
        dofs[base + 1] += qp.w * v.y();
        Vec2 grad_b = qp.l1 * qp.l2 * gl[0] + qp.l0 * qp.l2 * gl[1] + qp.l0 * qp.l1 * gl[2];
        Vec2 cb = scale[e] * Vec2(grad_b.y(), -grad_b.x());
        dofs[base + 2] += qp.w * v.dot(cb);
      }
    }
  }
  for (int i = 0; i < n_vel; ++i)
    if (vel_constrained[i]) dofs[i] = 0.0;
  return dofs;
}

MixedSolution::MixedSolution(const MixedSpace& s, Eigen::VectorXd v, Eigen::VectorXd p)
    : space(&s), vel(std::move(v)), pr(std::move(p)) {
  if (vel.size() != s.n_vel || pr.size() != s.n_pr)
    throw NumericalError("solution coefficient lengths do not match the space");
  const int ne = s.mesh->n_elements();
  vel_poly_.resize(ne);
  pr_poly_.resize(ne);
  const int nloc = s.n_vel_local();
  for (int e = 0; e < ne; ++e) {
    Eigen::Matrix<double, 2, Eigen::Dynamic> P(2, s.n_mono);
    P.setZero();
    for (int l = 0; l < nloc; ++l) {
      const double c = vel[s.vel_global_dof(e, l)];
      if (c == 0.0) continue;
      P.row(0) += c * s.vel_basis[e].row(l).head(s.n_mono);
      P.row(1) += c * s.vel_basis[e].row(l).tail(s.n_mono);
    }
    vel_poly_[e] = P;
    Eigen::VectorXd q(s.pr_per_elem);
    for (int m = 0; m < s.pr_per_elem; ++m) q(m) = pr[s.pr_global_dof(e, m)];
    pr_poly_[e] = q;
  }
}

void MixedSolution::check_point(int elem, const Vec2& x) const {
  auto c = space->mesh->coords(elem);
  auto l = barycentric(c[0], c[1], c[2], x);
  if (!barycentric_inside(l, 1e-7))
    throw NumericalError("evaluation point outside element " + std::to_string(elem));
}

Vec2 MixedSolution::velocity(int elem, const Vec2& x) const {
  check_point(elem, x);
  return vel_poly_[elem] * space->monomials(elem, x);
}

Mat2 MixedSolution::velocity_grad(int elem, const Vec2& x) const {
  check_point(elem, x);
  Eigen::VectorXd dX, dY;
  space->monomial_gradients(elem, x, dX, dY);
  Mat2 G;
  G(0, 0) = vel_poly_[elem].row(0).dot(dX);
  G(0, 1) = vel_poly_[elem].row(0).dot(dY);
  G(1, 0) = vel_poly_[elem].row(1).dot(dX);
  G(1, 1) = vel_poly_[elem].row(1).dot(dY);
  return G;
}

double MixedSolution::velocity_div(int elem, const Vec2& x) const {
  Mat2 G = velocity_grad(elem, x);
  return G(0, 0) + G(1, 1);
}

double MixedSolution::pressure(int elem, const Vec2& x) const {
  return pr_poly_[elem].dot(space->monomials(elem, x).head(space->pr_per_elem));
}

Vec2 MixedSolution::pressure_grad(int elem, const Vec2& x) const {
  if (space->pr_per_elem == 1) return Vec2::Zero();
  Eigen::VectorXd dX, dY;
  space->monomial_gradients(elem, x, dX, dY);
  return Vec2(pr_poly_[elem].dot(dX.head(space->pr_per_elem)),
              pr_poly_[elem].dot(dY.head(space->pr_per_elem)));
}

double MixedSolution::pressure_mean(int elem) const {
  // Local monomials are barycenter-centred, so X and Y are mean-free.
  return pr_poly_[elem](0);
}

void MixedSolution::linear_coeffs(int elem, Vec2& a, Mat2& G) const {
  if (space->n_mono != 3) throw NumericalError("linear_coeffs requires a k=0 velocity field");
  const auto& P = vel_poly_[elem];
  const double inv = 1.0 / space->scale[elem];
  G(0, 0) = P(0, 1) * inv;
  G(0, 1) = P(0, 2) * inv;
  G(1, 0) = P(1, 1) * inv;
  G(1, 1) = P(1, 2) * inv;
  a = Vec2(P(0, 0), P(1, 0)) - G * space->center[elem];
}

}  // namespace ttfem
