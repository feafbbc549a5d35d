#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmt/ensembles.hpp"
#include "rmt/limit_laws.hpp"
#include "rmt/spectral_stats.hpp"

using namespace rmt;
using cd = std::complex<double>;

TEST(EmpiricalMeasure, Atoms) {
  const std::vector<double> one{0.0};
  const auto mu = empirical_measure(one);
  ASSERT_EQ(mu.atoms().size(), 1u);
  EXPECT_EQ(mu.atoms()[0].weight, 1.0);
  const std::vector<double> two{-1.0, 1.0};
  const auto nu = empirical_measure(two);
  EXPECT_EQ(nu.atoms()[1].weight, 0.5);
  EXPECT_THROW(empirical_measure(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(EmpiricalMeasure({{0.0, 0.7}}), std::invalid_argument);
}

TEST(EmpiricalMeasure, Moments) {
  const std::vector<double> two{-1.0, 1.0};
  EXPECT_EQ(measure_moment(empirical_measure(two), 0), 1.0);
  EXPECT_EQ(measure_moment(empirical_measure(two), 3), 0.0);
  EXPECT_EQ(measure_moment(EmpiricalMeasure({{2.0, 1.0}}), 4), 16.0);
  EXPECT_THROW(measure_moment(empirical_measure(two), -1), std::invalid_argument);
}

TEST(EmpiricalMeasure, MomentIgnoresOrder) {
  RngState r(1);
  const auto s = sample_spectrum({EnsembleKind::wigner, 50}, r);
  std::vector<double> shuffled = s.eigenvalues;
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[3], shuffled[17]);
  for (int k : {1, 2, 5})
    EXPECT_NEAR(measure_moment(empirical_measure(s), k), measure_moment(empirical_measure(shuffled), k), 1e-13);
}

TEST(Stieltjes, PointMass) {
  const std::vector<double> zero{0.0};
  const auto mu = empirical_measure(zero);
  EXPECT_NEAR(std::abs(stieltjes_transform(mu, cd(0, 1)) - cd(0, 1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(stieltjes_transform(mu, cd(0, 2)) - cd(0, 0.5)), 0, 1e-15);
  EXPECT_THROW(stieltjes_transform(mu, cd(1, 0)), std::domain_error);
}

TEST(Stieltjes, HerglotzOnSamples) {
  RngState r(2);
  const auto s = sample_spectrum({EnsembleKind::goe, 40}, r);
  const auto mu = empirical_measure(s);
  for (double x = -10; x <= 10; x += 0.5)
    for (double y : {1e-3, 0.1, 3.0}) EXPECT_GT(stieltjes_transform(mu, cd(x, y)).imag(), 0.0);
}

TEST(Stieltjes, SemicircleSampleAtTwoI) {
  RngState r(3);
  const auto s = sample_spectrum({EnsembleKind::wigner, 1000}, r);
  const cd g = stieltjes_transform(empirical_measure(s.normalized()), cd(0, 2));
  EXPECT_LT(std::abs(g - cd(0, std::sqrt(2.0) - 1)), 0.02);
}

TEST(StieltjesInvert, PointMassAndSemicircle) {
  const std::vector<double> zero{0.0};
  const auto mu = empirical_measure(zero);
  const StieltjesFunction g = [&](cd z) { return stieltjes_transform(mu, z); };
  const InversionResult full = stieltjes_invert(g, -1, 1);
  EXPECT_NEAR(full.value, 1.0, 1e-3);
  EXPECT_NEAR(full.at_eta.back(), 1.0, 1e-3);
  EXPECT_EQ(full.etas, default_eta_schedule());
  EXPECT_NEAR(stieltjes_invert(g, 1, 2).value, 0.0, 1e-3);

  const InversionResult sc = stieltjes_invert(semicircle_stieltjes, -1, 1);
  EXPECT_NEAR(sc.value, 1.0 / 3.0 + std::sqrt(3.0) / (2 * std::numbers::pi), 1e-3);
}

TEST(StieltjesInvert, PartitionSumsToOne) {
  double total = 0;
  const double cuts[] = {-3, -1.5, 0, 0.5, 2.5};
  for (int i = 0; i < 4; ++i) {
    const double v = stieltjes_invert(semicircle_stieltjes, cuts[i], cuts[i + 1]).value;
    EXPECT_NEAR(v, semicircle_cdf(cuts[i + 1]) - semicircle_cdf(cuts[i]), 2e-3);
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 2e-3);
}

TEST(StieltjesInvert, ScheduleValidation) {
  const std::vector<double> up{1e-4, 1e-3};
  EXPECT_THROW(stieltjes_invert(semicircle_stieltjes, -1, 1, up), std::invalid_argument);
  EXPECT_THROW(stieltjes_invert(semicircle_stieltjes, 1, -1), std::invalid_argument);
}

TEST(VarianceExperiment, KZeroHasZeroVariance) {
  const std::vector<std::size_t> sizes{10, 20};
  const VarianceScan s = moment_variance_experiment({EnsembleKind::wigner, 10}, 0, sizes, 30, RngState(4));
  for (const auto& row : s.rows) {
    EXPECT_EQ(row.variance, 0.0);
    EXPECT_EQ(row.mean, 1.0);
  }
  EXPECT_TRUE(std::isnan(s.slope));
  const std::vector<std::size_t> one{10};
  EXPECT_THROW(moment_variance_experiment({EnsembleKind::wigner, 10}, 2, one, 30, RngState(4)),
               std::invalid_argument);
  EXPECT_THROW(moment_variance_experiment({EnsembleKind::wigner, 10}, 2, sizes, 29, RngState(4)),
               std::invalid_argument);
}

TEST(VarianceExperiment, FourthMomentApproachesTwo) {
  const std::vector<std::size_t> sizes{20, 80, 320};
  const VarianceScan s = moment_variance_experiment({EnsembleKind::wigner, 10}, 4, sizes, 30, RngState(5));
  EXPECT_GT(std::fabs(s.rows[0].mean - 2.0), std::fabs(s.rows[2].mean - 2.0));
  EXPECT_NEAR(s.rows[2].mean, 2.0, 0.05);
}

TEST(VarianceExperiment, ThreadCountDoesNotChangeResults) {
  const std::vector<std::size_t> sizes{20, 40};
  const auto a = moment_variance_experiment({EnsembleKind::wigner, 10}, 2, sizes, 40, RngState(6), 1);
  const auto b = moment_variance_experiment({EnsembleKind::wigner, 10}, 2, sizes, 40, RngState(6), 4);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.rows[i].mean, b.rows[i].mean);
    EXPECT_EQ(a.rows[i].variance, b.rows[i].variance);
  }
  EXPECT_EQ(a.slope, b.slope);
}

TEST(LeastSquares, TwoPointHandFit) {
  const std::vector<double> x{std::log(100.0), std::log(200.0)}, y{std::log(4e-4), std::log(1e-4)};
  EXPECT_NEAR(least_squares_slope(x, y), -2.0, 1e-12);
}

TEST(SelfConsistency, ExactAndMonteCarlo) {
  using c = std::complex<double>;
  const c z(0, 2);
  const c s = semicircle_stieltjes(z);
  EXPECT_LT(std::abs(s + 1.0 / z + s * s / z), 1e-12);

  auto residual = [&](std::size_t n, std::size_t reps, std::uint64_t seed) {
    std::vector<SpectralSample> samples;
    for (std::size_t i = 0; i < reps; ++i) {
      RngState r = RngState(seed).substream(i);
      samples.push_back(sample_spectrum({EnsembleKind::wigner, n}, r));
    }
    return self_consistency_residual(samples, z);
  };
  EXPECT_LT(residual(400, 50, 7), 0.02);
  EXPECT_THROW(self_consistency_residual(std::vector<SpectralSample>{}, z), std::invalid_argument);
}

TEST(EdgeRescaling, ConventionEnforced) {
  const double n = 16;
  SpectralSample s({-1.0, 2 * std::sqrt(n)}, Convention::unit_entries, 2.0);
  s.n = 16;
  EXPECT_EQ(largest_eigenvalue_rescaled(s), 0.0);
  SpectralSample w({-1.0, 1.0}, Convention::one_over_sqrt_n, 1.0);
  EXPECT_THROW(largest_eigenvalue_rescaled(w), std::invalid_argument);
}

TEST(BulkSpacings, QuantileSpectrumIsUniform) {
  // u = N F(x) equally spaced: the semicircle quantiles
  const std::size_t n = 200;
  std::vector<double> x;
  for (std::size_t i = 1; i <= n; ++i) {
    const double target = (i - 0.5) / n;
    double lo = -2, hi = 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (semicircle_cdf(mid) < target ? lo : hi) = mid;
    }
    x.push_back(0.5 * (lo + hi));
  }
  const SpectralSample s(x, Convention::one_over_sqrt_n, 1.0);
  for (double d : bulk_spacings(s, 0.5)) EXPECT_NEAR(d, 1.0, 1e-9);
  EXPECT_THROW(bulk_spacings(s, 0.0), std::invalid_argument);
  const SpectralSample edge({-1.9, 1.9}, Convention::one_over_sqrt_n, 1.0);
  EXPECT_THROW(bulk_spacings(edge, 0.5), std::domain_error);
}

TEST(BulkSpacings, GueMeanAndRepulsion) {
  RngState r(8);
  const auto s = sample_spectrum({EnsembleKind::gue, 1000}, r);
  const auto sp = bulk_spacings(s, 0.5);
  double mean = 0, small = 0;
  for (double d : sp) {
    mean += d;
    small += d < 0.1;
  }
  EXPECT_NEAR(mean / sp.size(), 1.0, 0.05);
  EXPECT_LT(small / sp.size(), 0.05);
}

TEST(Histogram, Basics) {
  const std::vector<double> one{0.3};
  const Histogram h1 = histogram(one, {});
  EXPECT_EQ(h1.total(), 1u);
  EXPECT_EQ(std::count_if(h1.counts.begin(), h1.counts.end(), [](auto c) { return c > 0; }), 1);

  const std::vector<double> two{0.0, 1.0};
  Binning b;
  b.bins = 2;
  const Histogram h2 = histogram(two, b);
  EXPECT_EQ(h2.counts, (std::vector<std::uint64_t>{1, 1}));

  RngState r(9);
  std::vector<double> xs(1000);
  for (double& x : xs) x = r.normal();
  b.bins = 37;
  b.density = true;
  const Histogram hd = histogram(xs, b);
  double integral = 0;
  const auto ht = hd.heights();
  for (std::size_t i = 0; i < ht.size(); ++i) integral += ht[i] * (hd.edges[i + 1] - hd.edges[i]);
  EXPECT_NEAR(integral, 1.0, 1e-12);
  for (std::size_t i = 0; i + 1 < hd.edges.size(); ++i) EXPECT_LT(hd.edges[i], hd.edges[i + 1]);
}

TEST(Histogram, Errors) {
  const std::vector<double> xs{0.0, 1.0};
  Binning b;
  b.lo = 1.0;
  b.hi = 1.0;
  EXPECT_THROW(histogram(xs, b), std::invalid_argument);
  b.lo = 0.5;
  b.hi = 2.0;
  EXPECT_THROW(histogram(xs, b), std::invalid_argument);
  EXPECT_THROW(histogram(std::vector<double>{}, Binning{}), std::invalid_argument);
}

TEST(KsDistance, KnownValues) {
  EXPECT_NEAR(ks_distance({0.0}, [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); }), 1.0, 1e-15);
  EXPECT_NEAR(ks_distance({0.25, 0.75}, [](double x) { return x; }), 0.25, 1e-15);
}
