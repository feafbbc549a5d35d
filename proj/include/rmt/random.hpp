#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "rmt/error.hpp"

namespace rmt {

// Counter-based generator: draw k of stream s under seed is a pure function
// mix(key(seed, s) + k * gamma). Identical (seed, stream) pairs reproduce
// identical draws on every platform; independent streams are obtained by
// changing the stream id, never by sharing a state between threads.
class RngState {
 public:
  using result_type = std::uint64_t;

  explicit RngState(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(mix(seed ^ mix(stream + kStreamSalt))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  // Child stream, e.g. one per Monte-Carlo repetition.
  RngState substream(std::uint64_t index) const {
    return RngState(seed_, mix(stream_ * kGamma + index + 1));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform on the open interval (0, 1), 53 random bits.
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound).
  std::uint64_t uniform_int(std::uint64_t bound) {
    detail::require(bound > 0, "uniform_int: bound must be positive");
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal by Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang, with the U^{1/a} boost for a < 1.
  double gamma(double shape) {
    detail::require(shape > 0.0, "gamma: shape must be positive");
    if (shape < 1.0) {
      return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Chi variate with (possibly fractional) degrees of freedom.
  double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rmt
