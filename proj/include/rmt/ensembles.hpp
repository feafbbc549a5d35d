#pragma once

// Seedable samplers for the classical matrix ensembles. Every sampler takes
// an explicit RngState; nothing here touches global state.

#include <cmath>
#include <string>
#include <string_view>

#include "rmt/linalg.hpp"
#include "rmt/random.hpp"

namespace rmt {

// Centered, unit-variance entry laws.
enum class EntryDistribution { gaussian, rademacher, uniform };

inline const char* to_string(EntryDistribution d) {
  switch (d) {
    case EntryDistribution::gaussian: return "gaussian";
    case EntryDistribution::rademacher: return "rademacher";
    case EntryDistribution::uniform: return "uniform";
  }
  return "?";
}

inline EntryDistribution parse_entry_distribution(std::string_view s) {
  if (s == "gaussian") return EntryDistribution::gaussian;
  if (s == "rademacher") return EntryDistribution::rademacher;
  if (s == "uniform") return EntryDistribution::uniform;
  throw std::invalid_argument("unknown entry law: " + std::string(s));
}

inline double draw_entry(EntryDistribution dist, RngState& rng) {
  switch (dist) {
    case EntryDistribution::gaussian: return rng.normal();
    case EntryDistribution::rademacher: return (rng() >> 63) ? 1.0 : -1.0;
    case EntryDistribution::uniform: return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
  }
  return 0.0;
}

// X_ij = Z_ij / sqrt(n), Z iid for i <= j.
inline SymmetricMatrix sample_wigner(std::size_t n, EntryDistribution dist, RngState& rng) {
  detail::require(n >= 1, "sample_wigner: n must be >= 1");
  SymmetricMatrix x(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) x.set(i, j, s * draw_entry(dist, rng));
  return x;
}

// Diagonal N(0, 2), off-diagonal N(0, 1).
inline SymmetricMatrix sample_goe(std::size_t n, RngState& rng) {
  detail::require(n >= 1, "sample_goe: n must be >= 1");
  SymmetricMatrix x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.set(i, i, std::sqrt(2.0) * rng.normal());
    for (std::size_t j = i + 1; j < n; ++j) x.set(i, j, rng.normal());
  }
  return x;
}

// Diagonal N(0, 1), off-diagonal (xi + i eta) / sqrt(2).
inline HermitianMatrix sample_gue(std::size_t n, RngState& rng) {
  detail::require(n >= 1, "sample_gue: n must be >= 1");
  HermitianMatrix x(n);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    x.set(i, i, rng.normal());
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      x.set(i, j, cdouble(s * re, s * im));
    }
  }
  return x;
}

// (1/n) X^T X for an n-by-m X with iid unit-variance entries; m-by-m result.
inline SymmetricMatrix sample_wishart(std::size_t n, std::size_t m, RngState& rng,
                                      EntryDistribution dist = EntryDistribution::gaussian) {
  detail::require(n >= 1 && m >= 1, "sample_wishart: dimensions must be >= 1");
  std::vector<double> x(n * m);
  for (double& v : x) v = draw_entry(dist, rng);
  SymmetricMatrix w(m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += x[r * m + a] * x[r * m + b];
      w.set(a, b, s * inv_n);
    }
  return w;
}

// Tridiagonal beta model. Diagonal N(0, 2)/sqrt(2), off-diagonal entry k
// (k = n-1 down to 1) chi_{beta k}/sqrt(2), everything times sqrt(2/beta) so
// the eigenvalue density is prod |x_i - x_j|^beta exp(-beta/4 sum x^2).
inline TridiagonalSymmetric sample_beta_tridiagonal(std::size_t n, double beta, RngState& rng) {
  detail::require(n >= 1, "sample_beta_tridiagonal: n must be >= 1");
  detail::require(beta > 0.0, "sample_beta_tridiagonal: beta must be positive");
  const double scale = std::sqrt(2.0 / beta) / std::sqrt(2.0);
  std::vector<double> d(n), e(n - 1);
  for (std::size_t i = 0; i < n; ++i) d[i] = scale * std::sqrt(2.0) * rng.normal();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double k = static_cast<double>(n - 1 - i);
    e[i] = scale * rng.chi(beta * k);
  }
  return TridiagonalSymmetric(std::move(d), std::move(e));
}

enum class EnsembleKind { wigner, goe, gue, wishart, beta_tridiagonal };

inline const char* to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::wigner: return "wigner";
    case EnsembleKind::goe: return "goe";
    case EnsembleKind::gue: return "gue";
    case EnsembleKind::wishart: return "wishart";
    case EnsembleKind::beta_tridiagonal: return "beta";
  }
  return "?";
}

inline EnsembleKind parse_ensemble_kind(std::string_view s) {
  if (s == "wigner") return EnsembleKind::wigner;
  if (s == "goe") return EnsembleKind::goe;
  if (s == "gue") return EnsembleKind::gue;
  if (s == "wishart") return EnsembleKind::wishart;
  if (s == "beta") return EnsembleKind::beta_tridiagonal;
  throw std::invalid_argument("unknown ensemble: " + std::string(s));
}

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::wigner;
  std::size_t n = 1;
  std::size_t m = 1;  // Wishart column count
  double beta = 1.0;  // tridiagonal model only
  EntryDistribution law = EntryDistribution::gaussian;
};

// One draw, diagonalized. Wishart spectra are already O(1) and are tagged
// ONE_OVER_SQRT_N so that normalized() leaves them untouched.
inline SpectralSample sample_spectrum(const EnsembleSpec& spec, RngState& rng) {
  switch (spec.kind) {
    case EnsembleKind::wigner:
      return {symmetric_eigenvalues(sample_wigner(spec.n, spec.law, rng)),
              Convention::one_over_sqrt_n, 1.0};
    case EnsembleKind::goe:
      return {symmetric_eigenvalues(sample_goe(spec.n, rng)), Convention::unit_entries, 1.0};
    case EnsembleKind::gue:
      return {hermitian_eigenvalues(sample_gue(spec.n, rng)), Convention::unit_entries, 2.0};
    case EnsembleKind::wishart:
      return {symmetric_eigenvalues(sample_wishart(spec.n, spec.m, rng, spec.law)),
              Convention::one_over_sqrt_n, 1.0};
    case EnsembleKind::beta_tridiagonal:
      return {tridiagonal_eigenvalues(sample_beta_tridiagonal(spec.n, spec.beta, rng)),
              Convention::unit_entries, spec.beta};
  }
  throw std::invalid_argument("sample_spectrum: unknown ensemble");
}

}  // namespace rmt
