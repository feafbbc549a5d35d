#pragma once

// Empirical spectral measures and the statistics built on them: moments,
// Stieltjes transforms and their inversion, variance scaling, edge and bulk
// statistics, histograms and KS distances.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/limit_laws.hpp"
#include "rmt/linalg.hpp"
#include "rmt/parallel.hpp"

namespace rmt {

struct Atom {
  double location;
  double weight;
};

class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    detail::require(!atoms_.empty(), "EmpiricalMeasure: no atoms");
    double total = 0.0;
    for (const Atom& a : atoms_) {
      detail::require(a.weight >= 0.0, "EmpiricalMeasure: negative weight");
      total += a.weight;
    }
    detail::require(std::fabs(total - 1.0) <= 1e-12, "EmpiricalMeasure: weights must sum to 1");
  }

  std::span<const Atom> atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

// Uniform atoms 1/N at the given points.
inline EmpiricalMeasure empirical_measure(std::span<const double> points) {
  detail::require(!points.empty(), "empirical_measure: empty sample");
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  const double w = 1.0 / static_cast<double>(points.size());
  for (double x : points) atoms.push_back({x, w});
  return EmpiricalMeasure(std::move(atoms));
}

inline EmpiricalMeasure empirical_measure(const SpectralSample& s) {
  return empirical_measure(std::span<const double>(s.eigenvalues));
}

inline double measure_moment(const EmpiricalMeasure& mu, int k) {
  detail::require(k >= 0, "measure_moment: k must be nonnegative");
  std::vector<double> terms;
  terms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) terms.push_back(a.weight * std::pow(a.location, k));
  return pairwise_sum(terms);
}

inline std::complex<double> stieltjes_transform(const EmpiricalMeasure& mu, std::complex<double> z) {
  detail::require_domain(z.imag() != 0.0, "stieltjes_transform: z must be off the real axis");
  std::complex<double> g{};
  for (const Atom& a : mu.atoms()) g += a.weight / (a.location - z);
  return g;
}

using StieltjesFunction = std::function<std::complex<double>(std::complex<double>)>;

struct InversionResult {
  double value = 0.0;            // extrapolated to eta -> 0
  std::vector<double> etas;      // schedule used
  std::vector<double> at_eta;    // mass estimate at each eta
};

inline const std::vector<double>& default_eta_schedule() {
  static const std::vector<double> s{1e-2, 1e-3, 1e-4};
  return s;
}

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// mu[a, b] = lim_{eta -> 0} int_a^b (1/pi) Im g(x + i eta) dx. The integral is
// taken by Simpson's rule on 2048 base panels per unit length, each refined
// adaptively so peaks narrower than a panel are resolved; the values over the
// schedule are extrapolated linearly in eta from the two smallest etas.
inline InversionResult stieltjes_invert(const StieltjesFunction& g, double a, double b,
                                        std::span<const double> eta_schedule = default_eta_schedule()) {
  detail::require(a < b, "stieltjes_invert: need a < b");
  detail::require(!eta_schedule.empty(), "stieltjes_invert: empty eta schedule");
  for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
    detail::require(eta_schedule[i] > 0.0, "stieltjes_invert: etas must be positive");
    if (i > 0)
      detail::require(eta_schedule[i] < eta_schedule[i - 1],
                      "stieltjes_invert: eta schedule must be strictly decreasing");
  }
  InversionResult out;
  const std::size_t panels =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2048.0 * (b - a))));
  const double h = (b - a) / static_cast<double>(panels);
  for (double eta : eta_schedule) {
    auto f = [&](double x) { return g({x, eta}).imag() / std::numbers::pi; };
    std::vector<double> parts(panels);
    double fl = f(a);
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + h * static_cast<double>(p);
      const double hi = (p + 1 == panels) ? b : lo + h;
      const double fm = f(0.5 * (lo + hi)), fr = f(hi);
      const double whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fr);
      parts[p] = detail::adaptive_simpson(f, lo, hi, fl, fm, fr, whole, 1e-12, 40);
      fl = fr;
    }
    out.etas.push_back(eta);
    out.at_eta.push_back(pairwise_sum(parts));
  }
  const std::size_t k = out.at_eta.size();
  if (k == 1) {
    out.value = out.at_eta[0];
  } else {
    const double e1 = out.etas[k - 2], e2 = out.etas[k - 1];
    const double v1 = out.at_eta[k - 2], v2 = out.at_eta[k - 1];
    out.value = v2 - e2 * (v1 - v2) / (e1 - e2);
  }
  return out;
}

// Ordinary least-squares slope of ys on xs.
inline double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  detail::require(xs.size() == ys.size() && xs.size() >= 2, "least_squares_slope: need >= 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

struct MomentStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::size_t reps = 0;
};

struct VarianceScan {
  std::vector<MomentStats> rows;
  double slope = std::numeric_limits<double>::quiet_NaN();  // d log Var / d log N
};

inline MomentStats summarize(std::size_t n, std::span<const double> values) {
  MomentStats s;
  s.n = n;
  s.reps = values.size();
  s.mean = pairwise_sum(values) / static_cast<double>(values.size());
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
    s.variance = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
  }
  return s;
}

// <L_N, x^k> on the semicircle scale for `reps` independent draws.
inline std::vector<double> moment_draws(const EnsembleSpec& spec, unsigned k, std::size_t reps,
                                        const RngState& base, unsigned threads = 0) {
  return parallel_map(reps, threads, [&](std::size_t r) {
    RngState rng = base.substream(r);
    const std::vector<double> x = sample_spectrum(spec, rng).normalized();
    return measure_moment(empirical_measure(x), static_cast<int>(k));
  });
}

// Mean and variance of <L_N, x^k> for each N in `sizes`, plus the fitted
// log-log slope of variance against N.
inline VarianceScan moment_variance_experiment(EnsembleSpec spec, unsigned k,
                                               std::span<const std::size_t> sizes, std::size_t reps,
                                               const RngState& base, unsigned threads = 0) {
  detail::require(sizes.size() >= 2, "moment_variance_experiment: need at least two sizes");
  detail::require(reps >= 30, "moment_variance_experiment: need at least 30 repetitions");
  VarianceScan scan;
  std::vector<double> lx, ly;
  bool positive = true;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    spec.n = sizes[i];
    const std::vector<double> v = moment_draws(spec, k, reps, base.substream(i), threads);
    scan.rows.push_back(summarize(sizes[i], v));
    positive = positive && scan.rows.back().variance > 0.0;
    lx.push_back(std::log(static_cast<double>(sizes[i])));
    ly.push_back(positive ? std::log(scan.rows.back().variance) : 0.0);
  }
  if (positive) scan.slope = least_squares_slope(lx, ly);
  return scan;
}

// |s + 1/z + s^2/z| for s the Monte-Carlo mean of g_N(z) on the semicircle scale.
inline double self_consistency_residual(std::span<const SpectralSample> samples, std::complex<double> z) {
  detail::require(!samples.empty(), "self_consistency_residual: empty sample set");
  detail::require_domain(z.imag() > 0.0, "self_consistency_residual: need Im z > 0");
  std::complex<double> s{};
  for (const SpectralSample& smp : samples) {
    const std::vector<double> x = smp.normalized();
    s += stieltjes_transform(empirical_measure(x), z);
  }
  s /= static_cast<double>(samples.size());
  return std::abs(s + 1.0 / z + s * s / z);
}

// (lambda_max - 2 sqrt(N)) N^{1/6}; edge scaling for UNIT_ENTRIES spectra.
inline double largest_eigenvalue_rescaled(const SpectralSample& s) {
  detail::require(s.convention == Convention::unit_entries,
                  "largest_eigenvalue_rescaled: sample must use the UNIT_ENTRIES convention");
  detail::require(s.n > 0, "largest_eigenvalue_rescaled: empty sample");
  const double n = static_cast<double>(s.n);
  return (s.eigenvalues.back() - 2.0 * std::sqrt(n)) * std::pow(n, 1.0 / 6.0);
}

// Nearest-neighbour spacings in the bulk, unfolded through the semicircle CDF
// (u = N F(x)) so the mean spacing is one. Only eigenvalues with
// |x| <= 2 * window_fraction on the semicircle scale are kept.
inline std::vector<double> bulk_spacings(const SpectralSample& s, double window_fraction) {
  detail::require(window_fraction > 0.0 && window_fraction <= 1.0,
                  "bulk_spacings: window fraction must lie in (0, 1]");
  const std::vector<double> x = s.normalized();
  const double n = static_cast<double>(s.n);
  const double edge = 2.0 * window_fraction;
  std::vector<double> u;
  for (double v : x)
    if (std::fabs(v) <= edge) u.push_back(n * semicircle_cdf(v));
  if (u.size() < 2) throw std::domain_error("bulk_spacings: window holds fewer than two eigenvalues");
  std::vector<double> out(u.size() - 1);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) out[i] = u[i + 1] - u[i];
  return out;
}

struct Histogram {
  std::vector<double> edges;          // strictly ascending, bins + 1 entries
  std::vector<std::uint64_t> counts;  // one per bin
  bool density = false;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  // Bin heights: counts, or counts / (total * width) in density mode.
  std::vector<double> heights() const {
    std::vector<double> h(counts.size());
    const double t = static_cast<double>(total());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      h[i] = static_cast<double>(counts[i]);
      if (density) h[i] /= t * (edges[i + 1] - edges[i]);
    }
    return h;
  }
};

struct Binning {
  std::size_t bins = 50;
  std::optional<double> lo;  // defaults to the sample range
  std::optional<double> hi;
  bool density = false;
};

inline Histogram histogram(std::span<const double> xs, const Binning& binning) {
  detail::require(!xs.empty(), "histogram: empty sample");
  detail::require(binning.bins >= 1, "histogram: need at least one bin");
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  double lo = binning.lo.value_or(*mn);
  double hi = binning.hi.value_or(*mx);
  if (binning.lo || binning.hi) {
    detail::require(hi > lo, "histogram: zero-width range requested");
    detail::require(*mn >= lo && *mx <= hi, "histogram: sample lies outside the requested range");
  } else if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.density = binning.density;
  h.edges.resize(binning.bins + 1);
  for (std::size_t i = 0; i <= binning.bins; ++i)
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(binning.bins);
  h.edges.back() = hi;
  h.counts.assign(binning.bins, 0);
  for (double x : xs) {
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    std::size_t bin = static_cast<std::size_t>(std::distance(h.edges.begin(), it));
    bin = bin == 0 ? 0 : bin - 1;
    if (bin >= binning.bins) bin = binning.bins - 1;  // x == hi
    ++h.counts[bin];
  }
  return h;
}

// sup_x |F_n(x) - F(x)| evaluated at the sample points (both one-sided limits).
template <class Cdf>
double ks_distance(std::vector<double> xs, Cdf&& cdf) {
  detail::require(!xs.empty(), "ks_distance: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace rmt
