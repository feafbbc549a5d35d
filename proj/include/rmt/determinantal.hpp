#pragma once

// Determinantal machinery for GUE-type kernels: joint eigenvalue density,
// correlation functions, Mehta's integration identity, Fredholm determinants
// by Nystrom discretization, gap probabilities, and Tracy-Widom (beta = 2).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmt/error.hpp"
#include "rmt/linalg.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

// prod_{i<j} |x_i - x_j|^beta exp(-sum V(x_i)), V(x) = beta x^2 / 4 unless
// supplied. Accumulated in log space.
inline double joint_density_unnormalized(double beta, std::span<const double> xs,
                                         const std::function<double(double)>& potential = {}) {
  detail::require(beta > 0.0, "joint_density_unnormalized: beta must be positive");
  double log_p = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    detail::require(std::isfinite(xs[i]), "joint_density_unnormalized: non-finite point");
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double d = std::fabs(xs[i] - xs[j]);
      if (d == 0.0) return 0.0;
      log_p += beta * std::log(d);
    }
    log_p -= potential ? potential(xs[i]) : 0.25 * beta * xs[i] * xs[i];
  }
  return std::exp(log_p);
}

inline std::vector<double> kernel_matrix(const Kernel& k, std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = k.diagonal(xs[i]);
    for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = k(xs[i], xs[j]);
  }
  return m;
}

// R_k(x_1..x_k) = det[K_N(x_i, x_j)].
inline double correlation_fn(unsigned n, std::span<const double> xs) {
  detail::require(xs.size() <= n, "correlation_fn: k must not exceed N");
  if (xs.empty()) return 1.0;
  return determinant(kernel_matrix(cd_kernel(n), xs), xs.size());
}

struct MehtaCheck {
  double lhs;       // int det J_N d x_N
  double rhs;       // (r - N + 1) det J_{N-1}
  double residual;  // |lhs - rhs|
  double r;         // int K(x, x) dx
};

// Integrates det[K_N(x_i, x_j)]_{N x N} over the last point with a 200-node
// Gauss-Legendre rule and compares with (r - N + 1) det of the leading block.
inline MehtaCheck verify_mehta_reduction(unsigned n, std::span<const double> fixed_points) {
  detail::require(n >= 1 && fixed_points.size() + 1 == n,
                  "verify_mehta_reduction: supply N-1 fixed points");
  const Kernel k = cd_kernel(n);
  const double half_width = std::sqrt(2.0 * n) + 12.0;
  const QuadratureRule rule = gauss_legendre(200, -half_width, half_width);
  std::vector<double> pts(fixed_points.begin(), fixed_points.end());
  pts.push_back(0.0);
  double lhs = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    pts.back() = rule.nodes[q];
    lhs += rule.weights[q] * determinant(kernel_matrix(k, pts), n);
  }
  const double r = rule.integrate([&](double x) { return k.diagonal(x); });
  const double inner =
      fixed_points.empty() ? 1.0 : determinant(kernel_matrix(k, fixed_points), fixed_points.size());
  const double rhs = (r - n + 1.0) * inner;
  return {lhs, rhs, std::fabs(lhs - rhs), r};
}

// M_ij = sqrt(w_i w_j) K(x_i, x_j) on a Gauss-Legendre rule.
struct DiscretizedKernel {
  std::vector<double> matrix;  // row-major m x m, symmetric
  QuadratureRule rule;
  std::string kernel_name;

  std::size_t size() const { return rule.size(); }
};

inline DiscretizedKernel discretize(const Kernel& k, double lo, double hi, std::size_t m) {
  detail::require(m >= 1, "discretize: need at least one node");
  DiscretizedKernel d;
  d.rule = gauss_legendre(m, lo, hi);
  d.kernel_name = k.name();
  d.matrix = kernel_matrix(k, d.rule.nodes);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double& v = d.matrix[i * m + j];
      v *= std::sqrt(d.rule.weights[i] * d.rule.weights[j]);
      if (!std::isfinite(v))
        throw std::domain_error("fredholm: kernel is not finite on the quadrature nodes");
    }
  }
  return d;
}

struct FredholmResult {
  double value;                     // det(I - t M)
  std::vector<double> eigenvalues;  // of M, ascending
};

inline FredholmResult fredholm_det(const Kernel& k, double lo, double hi, std::size_t m, double t) {
  detail::require(m >= 10, "fredholm_det: need at least 10 nodes");
  detail::require(lo <= hi, "fredholm_det: empty interval orientation");
  const DiscretizedKernel d = discretize(k, lo, hi, m);
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i * m + j] = (i == j ? 1.0 : 0.0) - t * d.matrix[i * m + j];
  FredholmResult r;
  r.value = t == 0.0 ? 1.0 : determinant(std::move(a), m);
  r.eigenvalues = symmetric_eigenvalues(SymmetricMatrix(m, d.matrix));
  return r;
}

// exp(-sum_{j <= terms} t^j tr(M^j) / j), with the traces taken from explicit
// matrix powers. Requires spectral radius of t M below one.
inline double fredholm_det_trace_series(const Kernel& k, double lo, double hi, std::size_t m, double t,
                                        unsigned terms) {
  detail::require(m >= 1, "fredholm_det_trace_series: need nodes");
  if (t == 0.0) return 1.0;
  const DiscretizedKernel d = discretize(k, lo, hi, m);
  const std::vector<double> eig = symmetric_eigenvalues(SymmetricMatrix(m, d.matrix));
  double radius = 0.0;
  for (double e : eig) radius = std::max(radius, std::fabs(t * e));
  if (radius >= 1.0)
    throw std::domain_error("fredholm_det_trace_series: spectral radius of tK is >= 1");

  std::vector<double> tm(m * m), power(m * m), next(m * m);
  for (std::size_t i = 0; i < m * m; ++i) tm[i] = t * d.matrix[i];
  power = tm;
  double log_det = 0.0;
  for (unsigned j = 1; j <= terms; ++j) {
    double tr = 0.0;
    for (std::size_t i = 0; i < m; ++i) tr += power[i * m + i];
    log_det -= tr / j;
    if (j == terms) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l) {
        const double v = power[i * m + l];
        if (v == 0.0) continue;
        for (std::size_t c = 0; c < m; ++c) next[i * m + c] += v * tm[l * m + c];
      }
    std::swap(power, next);
  }
  return std::exp(log_det);
}

// A_0..A_{m_max}: probabilities of exactly m points in [lo, hi]. From the
// Nystrom eigenvalues l_j, F(t) = prod (1 - t l_j), so
//   A_m = (-1)^m F^{(m)}(1) / m! = prod (1 - l_j) e_m(l_j / (1 - l_j)).
inline std::vector<double> gap_probabilities(const Kernel& k, double lo, double hi, std::size_t m,
                                             std::size_t m_max) {
  std::vector<double> a(m_max + 1, 0.0);
  a[0] = 1.0;
  if (hi <= lo) return a;
  const FredholmResult f = fredholm_det(k, lo, hi, m, 1.0);
  double log_prod = 0.0;
  std::vector<double> ratio;
  for (double l : f.eigenvalues) {
    if (l >= 1.0 - 1e-12)
      throw std::domain_error("gap_probabilities: Nystrom eigenvalue at 1 (degenerate interval)");
    log_prod += std::log1p(-l);
    ratio.push_back(l / (1.0 - l));
  }
  // elementary symmetric polynomials e_0..e_{m_max}
  std::vector<double> e(m_max + 1, 0.0);
  e[0] = 1.0;
  for (double r : ratio)
    for (std::size_t q = m_max; q >= 1; --q) e[q] += r * e[q - 1];
  const double prod = std::exp(log_prod);
  for (std::size_t q = 0; q <= m_max; ++q) a[q] = prod * e[q];
  return a;
}

struct TracyWidomOptions {
  std::size_t nodes = 60;
  double length = 16.0;      // truncation length L of [s, s + L]
  double min_cut = 8.0;      // the cut is never placed below this
  double decay_tol = 1e-14;  // required Airy-kernel diagonal at the cut
};

// F_2(s) = det(I - K_Airy) on L^2[s, inf), truncated to [s, max(s + L, min_cut)].
inline double tracy_widom_cdf(double s, const TracyWidomOptions& opt = {}) {
  if (!(s >= -10.0 && s <= 6.0)) throw std::domain_error("tracy_widom_cdf: s must lie in [-10, 6]");
  const double cut = std::max(s + opt.length, opt.min_cut);
  const AiryKernel ak;
  if (std::fabs(ak.diagonal(cut)) >= opt.decay_tol)
    throw numerical_error("tracy_widom_cdf: Airy kernel not negligible at the cut; increase L");
  return fredholm_det(airy_kernel(), s, cut, opt.nodes, 1.0).value;
}

inline double tracy_widom_cdf(double s, std::size_t nodes) {
  TracyWidomOptions opt;
  opt.nodes = nodes;
  return tracy_widom_cdf(s, opt);
}

struct TracyWidomTable {
  std::vector<double> s;
  std::vector<double> cdf;

  // Linear interpolation; 0 below the table, 1 above.
  double operator()(double x) const {
    if (x <= s.front()) return x < s.front() ? 0.0 : cdf.front();
    if (x >= s.back()) return 1.0;
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - s.begin());
    const double w = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return (1.0 - w) * cdf[i - 1] + w * cdf[i];
  }
};

inline TracyWidomTable tracy_widom_table(double lo, double hi, double step, std::size_t nodes = 60) {
  detail::require(step > 0.0 && lo <= hi, "tracy_widom_table: bad range");
  TracyWidomTable t;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double s = lo + step * static_cast<double>(i);
    t.s.push_back(s);
    t.cdf.push_back(tracy_widom_cdf(s, nodes));
  }
  return t;
}

}  // namespace rmt
