#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace ttfem {

struct QuadPoint1D {
  double s;  // node in [0,1]
  double w;  // weight, sum = 1
};

// Gauss-Legendre nodes on [0,1], computed once per order by Newton iteration
// on the Legendre recurrence. Exact for polynomials of degree 2n-1.
inline const std::vector<QuadPoint1D>& gauss01(int n) {
  static std::map<int, std::vector<QuadPoint1D>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<QuadPoint1D> pts(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // root guess on [-1,1]
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    pts[n - 1 - i] = {0.5 * (x + 1.0), 0.5 * w};
  }
  return cache.emplace(n, std::move(pts)).first->second;
}

struct TriQuadPoint {
  double l0, l1, l2;  // barycentric coordinates
  double w;           // weight, sum = 1 (multiply by element area)
};

// Symmetric 12-point rule, exact for degree <= 6.
inline const std::vector<TriQuadPoint>& triangle_rule() {
  static const std::vector<TriQuadPoint> rule = [] {
    std::vector<TriQuadPoint> r;
    auto add3 = [&r](double a, double b, double w) {
      r.push_back({a, b, b, w});
      r.push_back({b, a, b, w});
      r.push_back({b, b, a, w});
    };
    auto add6 = [&r](double a, double b, double c, double w) {
      r.push_back({a, b, c, w});
      r.push_back({a, c, b, w});
      r.push_back({b, a, c, w});
      r.push_back({b, c, a, w});
      r.push_back({c, a, b, w});
      r.push_back({c, b, a, w});
    };
    add3(0.873821971016996, 0.063089014491502, 0.050844906370207);
    add3(0.501426509658179, 0.249286745170910, 0.116786275726379);
    add6(0.636502499121399, 0.310352451033785, 0.053145049844816,
         0.082851075618374);
    return r;
  }();
  return rule;
}

}  // namespace ttfem
