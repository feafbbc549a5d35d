#pragma once

// Hermite polynomials and functions (weight e^{-x^2}), the Airy function, and
// the kernels of the Gaussian unitary ensemble: Christoffel-Darboux, its bulk
// and edge rescalings, and their sine and Airy limits.

#include <cmath>
#include <concepts>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "rmt/error.hpp"

namespace rmt {

// Physicists' Hermite H_n by the upward recurrence H_{n+1} = 2x H_n - 2n H_{n-1}.
// Overflows to inf for large n|x|; use hermite_function there.
inline double hermite_poly(unsigned n, double x) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * x;
  for (unsigned k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// phi_0..phi_n at x, phi_k = H_k e^{-x^2/2} / (pi^{1/4} 2^{k/2} sqrt(k!)), by the
// normalized recurrence (no factorials are formed). The recurrence runs without
// the Gaussian factor and is rescaled as it grows, so large |x| does not
// underflow phi_0 before the high orders recover.
inline std::vector<double> hermite_functions(unsigned n, double x) {
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  const double log_base = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  std::vector<double> phi(n + 1), log_scale(n + 1, 0.0);
  double p0 = 1.0, p1 = std::sqrt(2.0) * x, shift = 0.0;
  phi[0] = p0;
  if (n >= 1) phi[1] = p1;
  for (unsigned k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double p2 = x * std::sqrt(2.0 / (kd + 1.0)) * p1 - std::sqrt(kd / (kd + 1.0)) * p0;
    p0 = p1;
    p1 = p2;
    if (std::fabs(p1) > kBig) {
      p0 /= kBig;
      p1 /= kBig;
      shift += log_big;
    }
    phi[k + 1] = p1;
    log_scale[k + 1] = shift;
  }
  for (unsigned k = 0; k <= n; ++k) phi[k] *= std::exp(log_scale[k] + log_base);
  return phi;
}

inline double hermite_function(unsigned n, double x) { return hermite_functions(n, x)[n]; }

struct AiryValue {
  double ai;
  double aip;
};

namespace detail {

// Ai(0) = 3^{-2/3} / Gamma(2/3), Ai'(0) = -3^{-1/3} / Gamma(1/3) (Maclaurin data).
inline constexpr double kAiryAi0 = 0.35502805388781723926;
inline constexpr double kAiryAip0 = -0.25881940379280679840;

// Advances (y, y') of y'' = t y from t0 to t1 by Taylor series; the Airy
// equation gives y^{(k+2)} = t0 y^{(k)} + k y^{(k-1)} for the derivatives at t0.
inline AiryValue airy_taylor_step(double t0, AiryValue v, double h) {
  constexpr int kTerms = 60;
  double c[kTerms + 2];  // c[k] = y^{(k)}(t0) / k!
  c[0] = v.ai;
  c[1] = v.aip;
  c[2] = 0.5 * t0 * c[0];
  for (int k = 1; k < kTerms; ++k) {
    // (k+2)(k+1) c[k+2] = t0 c[k] + c[k-1]
    c[k + 2] = (t0 * c[k] + c[k - 1]) / ((k + 2.0) * (k + 1.0));
  }
  double y = 0.0, dy = 0.0;
  for (int k = kTerms + 1; k >= 0; --k) y = y * h + c[k];
  for (int k = kTerms + 1; k >= 1; --k) dy = dy * h + k * c[k];
  return {y, dy};
}

inline AiryValue airy_march(double t_from, AiryValue v, double t_to) {
  constexpr double kStep = 0.25;
  double t = t_from;
  while (t != t_to) {
    const double remaining = t_to - t;
    const double h = std::fabs(remaining) <= kStep ? remaining : std::copysign(kStep, remaining);
    v = airy_taylor_step(t, v, h);
    t = std::fabs(remaining) <= kStep ? t_to : t + h;
  }
  return v;
}

// Exponentially decaying asymptotic expansion, valid for large positive t.
inline AiryValue airy_asymptotic_positive(double t) {
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  double u = 1.0, v = 1.0;  // coefficients u_k, v_k
  double su = 1.0, sv = 1.0;
  double p = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double kd = k;
    u *= (6.0 * kd - 5.0) * (6.0 * kd - 3.0) * (6.0 * kd - 1.0) / ((2.0 * kd - 1.0) * 216.0 * kd);
    v = -(6.0 * kd + 1.0) / (6.0 * kd - 1.0) * u;
    p *= -1.0 / zeta;
    const double tu = u * p, tv = v * p;
    su += tu;
    sv += tv;
    if (std::fabs(tu) < 1e-18 * std::fabs(su) && std::fabs(tv) < 1e-18 * std::fabs(sv)) break;
  }
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double q = std::pow(t, 0.25);
  return {e / q * su, -e * q * sv};
}

}  // namespace detail

// Ai and Ai' on [-30, 30]. Nonnegative t: asymptotic expansion at t >= 10,
// otherwise Taylor-marched back from t = 10 (the decaying solution grows in
// that direction, so the march is stable). Negative t: Taylor-marched from the
// values at 0.
inline AiryValue airy(double t) {
  if (!(t >= -30.0 && t <= 30.0)) throw std::domain_error("airy: argument outside [-30, 30]");
  constexpr double kSwitch = 10.0;
  if (t >= kSwitch) return detail::airy_asymptotic_positive(t);
  if (t >= 0.0) return detail::airy_march(kSwitch, detail::airy_asymptotic_positive(kSwitch), t);
  return detail::airy_march(0.0, {detail::kAiryAi0, detail::kAiryAip0}, t);
}

// A symmetric kernel with an exact diagonal evaluator.
template <class K>
concept SymmetricKernel = requires(const K& k, double x) {
  { k(x, x) } -> std::convertible_to<double>;
  { k.diagonal(x) } -> std::convertible_to<double>;
};

// Type-erased kernel; values are immutable after construction.
class Kernel {
 public:
  Kernel() = default;

  template <SymmetricKernel K>
  Kernel(K k, std::string name)
      : impl_(std::make_shared<K>(std::move(k))),
        eval_([p = impl_.get()](double x, double y) { return (*static_cast<const K*>(p))(x, y); }),
        diag_([p = impl_.get()](double x) { return static_cast<const K*>(p)->diagonal(x); }),
        name_(std::move(name)) {}

  double operator()(double x, double y) const { return eval_(x, y); }
  double diagonal(double x) const { return diag_(x); }
  const std::string& name() const { return name_; }

 private:
  std::shared_ptr<const void> impl_;
  std::function<double(double, double)> eval_;
  std::function<double(double)> diag_;
  std::string name_;
};

// K_N(x, y) = sum_{k<N} phi_k(x) phi_k(y), by the Christoffel-Darboux quotient
// sqrt(N/2) (phi_N(x) phi_{N-1}(y) - phi_{N-1}(x) phi_N(y)) / (x - y) away from
// the diagonal and by the sum within 1e-6 of it.
class ChristoffelDarbouxKernel {
 public:
  explicit ChristoffelDarbouxKernel(unsigned n) : n_(n) {
    detail::require(n >= 1, "cd_kernel: N must be >= 1");
  }

  unsigned order() const { return n_; }

  double operator()(double x, double y) const {
    if (std::fabs(x - y) <= 1e-6) return sum_form(x, y);
    const auto px = hermite_functions(n_, x);
    const auto py = hermite_functions(n_, y);
    return std::sqrt(0.5 * n_) * (px[n_] * py[n_ - 1] - px[n_ - 1] * py[n_]) / (x - y);
  }

  double diagonal(double x) const { return sum_form(x, x); }

  double sum_form(double x, double y) const {
    const auto px = hermite_functions(n_ - 1, x);
    const auto py = hermite_functions(n_ - 1, y);
    double s = 0.0;
    for (unsigned k = 0; k < n_; ++k) s += px[k] * py[k];
    return s;
  }

 private:
  unsigned n_;
};

struct SineKernel {
  double operator()(double x, double y) const {
    const double d = x - y;
    if (d == 0.0) return 1.0;
    const double a = std::numbers::pi * d;
    if (std::fabs(a) < 1e-4) return 1.0 - a * a / 6.0 + a * a * a * a / 120.0;
    return std::sin(a) / a;
  }
  double diagonal(double) const { return 1.0; }
};

// (Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y); diagonal Ai'(x)^2 - x Ai(x)^2.
struct AiryKernel {
  double operator()(double x, double y) const {
    if (std::fabs(x - y) <= 1e-6) {
      // first-order expansion about the midpoint keeps full accuracy here
      return diagonal(0.5 * (x + y));
    }
    const AiryValue a = airy(x), b = airy(y);
    return (a.ai * b.aip - b.ai * a.aip) / (x - y);
  }
  double diagonal(double x) const {
    const AiryValue a = airy(x);
    return a.aip * a.aip - x * a.ai * a.ai;
  }
};

// (pi / sqrt(2N)) K_N(pi xi / sqrt(2N), pi eta / sqrt(2N)).
class BulkScaledCdKernel {
 public:
  explicit BulkScaledCdKernel(unsigned n) : cd_(n), scale_(std::numbers::pi / std::sqrt(2.0 * n)) {
    detail::require(n >= 2, "bulk_scaled_cd: N must be >= 2");
  }
  double operator()(double x, double y) const { return scale_ * cd_(scale_ * x, scale_ * y); }
  double diagonal(double x) const { return scale_ * cd_.diagonal(scale_ * x); }

 private:
  ChristoffelDarbouxKernel cd_;
  double scale_;
};

// K_N at x = sqrt(2N) + xi / (sqrt(2) N^{1/6}), times 1 / (sqrt(2) N^{1/6}).
class EdgeScaledCdKernel {
 public:
  explicit EdgeScaledCdKernel(unsigned n)
      : cd_(n), center_(std::sqrt(2.0 * n)), width_(1.0 / (std::sqrt(2.0) * std::pow(n, 1.0 / 6.0))) {}
  double operator()(double x, double y) const { return width_ * cd_(map(x), map(y)); }
  double diagonal(double x) const { return width_ * cd_.diagonal(map(x)); }
  double map(double xi) const { return center_ + width_ * xi; }

 private:
  ChristoffelDarbouxKernel cd_;
  double center_;
  double width_;
};

inline Kernel cd_kernel(unsigned n) { return {ChristoffelDarbouxKernel(n), "cd"}; }
inline Kernel sine_kernel() { return {SineKernel{}, "sine"}; }
inline Kernel airy_kernel() { return {AiryKernel{}, "airy"}; }
inline Kernel bulk_scaled_cd(unsigned n) { return {BulkScaledCdKernel(n), "bulk_cd"}; }
inline Kernel edge_scaled_cd(unsigned n) { return {EdgeScaledCdKernel(n), "edge_cd"}; }

struct AsymptoticComparison {
  double exact;      // left-hand side at finite index
  double limit;      // limiting value
  double residual;   // |exact - limit|
};

// Bulk asymptotics of Hermite functions at x = pi xi / sqrt(4m) (the bulk
// scaling pi xi / sqrt(2N) with N = 2m):
//   even: (-1)^m m^{1/4} phi_{2m}(x)   -> cos(pi xi) / sqrt(pi)
//   odd:  (-1)^m m^{1/4} phi_{2m+1}(x) -> sin(pi xi) / sqrt(pi)
inline AsymptoticComparison hermite_bulk_asymptotic(unsigned m, double xi, bool odd = false) {
  detail::require(m >= 1, "hermite_bulk_asymptotic: m must be >= 1");
  const double md = static_cast<double>(m);
  const double x = std::numbers::pi * xi / std::sqrt(4.0 * md);
  const double sign = (m % 2) ? -1.0 : 1.0;
  const double lhs = sign * std::pow(md, 0.25) * hermite_function(2 * m + (odd ? 1 : 0), x);
  const double rhs = (odd ? std::sin(std::numbers::pi * xi) : std::cos(std::numbers::pi * xi)) /
                     std::sqrt(std::numbers::pi);
  return {lhs, rhs, std::fabs(lhs - rhs)};
}

struct SteepestDescentResult {
  double approx;          // c_n e^{n y^2} cos(n (y sqrt(1-y^2) - theta_c) + theta_0)
  double exact;           // H_n(sqrt(2n) y) by recurrence
  double envelope;        // c_n e^{n y^2}
  double theta_c;         // arccos(y)
  double theta_0;         // phase from sqrt(-n f''(z_pm))
  double relative_error;  // |approx - exact| / envelope
};

// Two-saddle approximation of H_n(sqrt(2n) y) for |y| < 1. With
// f(z) = 4yz - 2z^2 - log z the saddles are z_pm = e^{+-i theta_c}/2 and
//   c_n = n! (2n)^{-n/2} 2^n e^{n/2} / sqrt(pi n sin theta_c),
//   theta_0 = pi/4 - theta_c/2.
inline SteepestDescentResult hermite_steepest_descent(unsigned n, double y) {
  if (!(std::fabs(y) < 0.9))
    throw std::domain_error("hermite_steepest_descent: |y| must be < 0.9 (turning-point region)");
  detail::require(n >= 10, "hermite_steepest_descent: n must be >= 10");
  const double nd = static_cast<double>(n);
  const double theta = std::acos(y);
  const double theta0 = 0.25 * std::numbers::pi - 0.5 * theta;
  const double log_cn = std::lgamma(nd + 1.0) - 0.5 * nd * std::log(2.0 * nd) + nd * std::log(2.0) +
                        0.5 * nd - 0.5 * std::log(std::numbers::pi * nd * std::sin(theta));
  const double envelope = std::exp(log_cn + nd * y * y);
  const double phase = nd * (y * std::sqrt(1.0 - y * y) - theta) + theta0;
  SteepestDescentResult r;
  r.envelope = envelope;
  r.approx = envelope * std::cos(phase);
  r.exact = hermite_poly(n, std::sqrt(2.0 * nd) * y);
  r.theta_c = theta;
  r.theta_0 = theta0;
  r.relative_error = std::fabs(r.approx - r.exact) / envelope;
  return r;
}

}  // namespace rmt
