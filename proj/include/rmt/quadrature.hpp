#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "rmt/error.hpp"

namespace rmt {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive
  double lo = 0.0;
  double hi = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// m-point Gauss-Legendre rule on [lo, hi]; nodes by Newton iteration on P_m.
// Exact for polynomials of degree <= 2m - 1.
inline QuadratureRule gauss_legendre(std::size_t m, double lo, double hi) {
  detail::require(m >= 1, "gauss_legendre: need at least one node");
  detail::require(lo <= hi, "gauss_legendre: lo must not exceed hi");
  QuadratureRule rule;
  rule.lo = lo;
  rule.hi = hi;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (md + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= m; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = md * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) {
        // one more evaluation of dp at the converged node
        p0 = 1.0;
        p1 = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
          const double p2 = p1;
          p1 = p0;
          const double jd = static_cast<double>(j);
          p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
        }
        dp = md * (z * p0 - p1) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[m - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[m - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace rmt
