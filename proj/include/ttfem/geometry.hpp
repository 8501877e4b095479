#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace ttfem {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Rotate by -90 degrees: outward normal direction of a CCW-traversed edge.
inline Vec2 rot_cw(const Vec2& v) { return Vec2(v.y(), -v.x()); }

inline double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross2(b - a, c - a);
}

// Barycentric coordinates of x with respect to triangle (a,b,c).
inline std::array<double, 3> barycentric(const Vec2& a, const Vec2& b, const Vec2& c,
                                         const Vec2& x) {
  const double area = triangle_area(a, b, c);
  const double l0 = triangle_area(x, b, c) / area;
  const double l1 = triangle_area(a, x, c) / area;
  const double l2 = triangle_area(a, b, x) / area;
  return {l0, l1, l2};
}

inline bool barycentric_inside(const std::array<double, 3>& l, double tol) {
  return l[0] >= -tol && l[1] >= -tol && l[2] >= -tol;
}

}  // namespace ttfem
