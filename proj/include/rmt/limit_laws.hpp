#pragma once

// Closed-form limiting spectral laws: semicircle on [-2, 2] and
// Marchenko-Pastur with aspect ratio lambda = m/n.

#include <cmath>
#include <complex>
#include <algorithm>
#include <limits>
#include <numbers>
#include <utility>

#include "rmt/combinatorics.hpp"
#include "rmt/error.hpp"

namespace rmt {

inline double semicircle_density(double x) {
  const double r = 4.0 - x * x;
  return r > 0.0 ? std::sqrt(r) / (2.0 * std::numbers::pi) : 0.0;
}

// Catalan number C_{k/2} for even k, zero for odd k.
inline double semicircle_moment(unsigned k) {
  return k % 2 ? 0.0 : static_cast<double>(catalan(k / 2));
}

inline double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
         std::asin(0.5 * x) / std::numbers::pi;
}

// Root of s^2 + z s + 1 = 0 with Im s having the sign of Im z. The roots are
// reciprocal, so the small one is taken as 1/(large one) to avoid cancellation.
inline std::complex<double> semicircle_stieltjes(std::complex<double> z) {
  detail::require_domain(z.imag() != 0.0, "semicircle_stieltjes: z must be off the real axis");
  const std::complex<double> w = std::sqrt(z * z - 4.0);
  const std::complex<double> big = std::abs(-z + w) > std::abs(-z - w) ? 0.5 * (-z + w)
                                                                       : 0.5 * (-z - w);
  const std::complex<double> small = 1.0 / big;
  return (big.imag() * z.imag() > 0.0) ? big : small;
}

class MarchenkoPasturLaw {
 public:
  explicit MarchenkoPasturLaw(double lambda) : lambda_(lambda) {
    detail::require(lambda > 0.0 && std::isfinite(lambda), "MarchenkoPasturLaw: lambda must be > 0");
  }

  double lambda() const { return lambda_; }
  double a() const { return (1.0 - std::sqrt(lambda_)) * (1.0 - std::sqrt(lambda_)); }
  double b() const { return (1.0 + std::sqrt(lambda_)) * (1.0 + std::sqrt(lambda_)); }

 private:
  double lambda_;
};

inline std::pair<double, double> mp_support(const MarchenkoPasturLaw& law) {
  return {law.a(), law.b()};
}

inline double mp_atom(const MarchenkoPasturLaw& law) {
  return std::max(0.0, 1.0 - 1.0 / law.lambda());
}

// Continuous part sqrt((b-x)(x-a)) / (2 pi lambda x); the 1/lambda factor makes
// continuous mass + atom equal one.
inline double mp_density(double x, const MarchenkoPasturLaw& law) {
  const double a = law.a(), b = law.b();
  if (x <= a || x >= b) {
    if (x == 0.0 && a == 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * law.lambda() * x);
}

// With x = m - r cos(theta), m = 1 + lambda, r = 2 sqrt(lambda):
//   int_a^x sqrt((b-t)(t-a))/t dt
//     = (r^2 - m^2) int_0^theta dphi/(m - r cos phi) + m theta + r sin theta,
// and int_0^theta dphi/(m - r cos phi) = 2/|1-lambda| atan(sqrt((m+r)/(m-r)) tan(theta/2)).
inline double mp_cdf(double x, const MarchenkoPasturLaw& law) {
  const double lam = law.lambda();
  const double atom = mp_atom(law);
  if (x < 0.0) return 0.0;
  const double a = law.a(), b = law.b();
  if (x <= a) return atom;
  if (x >= b) return 1.0;
  const double m = 1.0 + lam;
  const double r = 2.0 * std::sqrt(lam);
  const double theta = std::acos(std::clamp((m - x) / r, -1.0, 1.0));
  const double gap = std::fabs(1.0 - lam);
  double singular = 0.0;
  if (gap > 0.0) {
    const double half = 0.5 * theta;
    // tan(theta/2) -> inf as theta -> pi; atan handles it
    const double t = std::sqrt((m + r) / (m - r)) * std::tan(half);
    singular = -gap * gap * (2.0 / gap) * std::atan(t);
  }
  const double integral = singular + m * theta + r * std::sin(theta);
  return std::min(1.0, atom + integral / (2.0 * std::numbers::pi * lam));
}

}  // namespace rmt
