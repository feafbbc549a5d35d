#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rmt/linalg.hpp"
#include "rmt/random.hpp"

using namespace rmt;

namespace {

SymmetricMatrix random_symmetric(std::size_t n, RngState& rng) {
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.normal());
  return a;
}

HermitianMatrix random_hermitian(std::size_t n, RngState& rng) {
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.set(i, i, rng.normal());
    for (std::size_t j = i + 1; j < n; ++j) h.set(i, j, cdouble(rng.normal(), rng.normal()));
  }
  return h;
}

std::vector<double> dense(const SymmetricMatrix& a) {
  std::vector<double> v(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) v[i * a.size() + j] = a(i, j);
  return v;
}

}  // namespace

TEST(SymmetricEigen, SmallClosedForms) {
  auto e = symmetric_eigenvalues(SymmetricMatrix(2, {2, 0, 0, 3}));
  EXPECT_DOUBLE_EQ(e[0], 2);
  EXPECT_DOUBLE_EQ(e[1], 3);
  e = symmetric_eigenvalues(SymmetricMatrix(2, {0, 1, 1, 0}));
  EXPECT_NEAR(e[0], -1, 1e-15);
  EXPECT_NEAR(e[1], 1, 1e-15);
}

TEST(SymmetricEigen, MatchesBisectionOracle) {
  RngState rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const SymmetricMatrix a = random_symmetric(n, rng);
    const auto got = symmetric_eigenvalues(a);
    const auto want = oracle::bisection_eigenvalues(dense(a), static_cast<int>(n));
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(got[k], want[k], 1e-10);
  }
}

TEST(SymmetricEigen, TraceAndOrdering) {
  RngState rng(12);
  for (std::size_t n : {1u, 3u, 17u, 60u}) {
    const SymmetricMatrix a = random_symmetric(n, rng);
    const auto e = symmetric_eigenvalues(a);
    ASSERT_EQ(e.size(), n);
    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    double s = 0, mx = 0;
    for (double x : e) s += x;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, std::fabs(a(i, j)));
    EXPECT_NEAR(s, a.trace(), 1e-9 * n * mx);
  }
}

TEST(SymmetricEigen, RejectsNonFinite) {
  SymmetricMatrix a(2);
  a.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  EXPECT_THROW(symmetric_eigenvalues(a), std::invalid_argument);
}

TEST(SymmetricMatrix, RejectsAsymmetry) {
  EXPECT_THROW(SymmetricMatrix(2, {1, 2, 3, 4}), std::invalid_argument);
}

TEST(HermitianEigen, ClosedForms) {
  HermitianMatrix id(3);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, 1.0);
  for (double x : hermitian_eigenvalues(id)) EXPECT_NEAR(x, 1.0, 1e-14);
  HermitianMatrix h(2);
  h.set(0, 1, cdouble(0, 1));
  const auto e = hermitian_eigenvalues(h);
  EXPECT_NEAR(e[0], -1, 1e-14);
  EXPECT_NEAR(e[1], 1, 1e-14);
}

TEST(HermitianEigen, MatchesBisectionOracle) {
  RngState rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const HermitianMatrix h = random_hermitian(n, rng);
    std::vector<cdouble> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = h(i, j);
    const auto want = oracle::bisection_eigenvalues(a, static_cast<int>(n));
    const auto got = hermitian_eigenvalues(h);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(got[k], want[k], 1e-10);
  }
}

TEST(TridiagonalEigen, ClosedFormsAndDensePath) {
  auto e = tridiagonal_eigenvalues({{1, 2, 3}, {0, 0}});
  EXPECT_EQ(e, (std::vector<double>{1, 2, 3}));
  e = tridiagonal_eigenvalues({{0, 0}, {1}});
  EXPECT_NEAR(e[0], -1, 1e-15);
  EXPECT_NEAR(e[1], 1, 1e-15);

  RngState rng(14);
  std::vector<double> d(50), off(49);
  for (double& x : d) x = rng.normal();
  for (double& x : off) x = rng.normal();
  const TridiagonalSymmetric t(d, off);
  const auto a = tridiagonal_eigenvalues(t);
  const auto b = symmetric_eigenvalues(t.to_dense());
  for (std::size_t k = 0; k < 50; ++k) EXPECT_NEAR(a[k], b[k], 1e-11);
}

TEST(TridiagonalSymmetric, LengthMismatchRejected) {
  EXPECT_THROW(TridiagonalSymmetric({1, 2}, {1, 2}), std::invalid_argument);
}

TEST(Resolvent, ScalarAndInverse) {
  const ComplexMatrix g = resolvent(SymmetricMatrix(1, {0.0}), cdouble(0, 1));
  EXPECT_NEAR(std::abs(g(0, 0) - cdouble(0, 1)), 0.0, 1e-15);

  RngState rng(15);
  const SymmetricMatrix a = random_symmetric(7, rng);
  const cdouble z(0.3, 0.7);
  const ComplexMatrix r = resolvent(a, z);
  ComplexMatrix az = ComplexMatrix::from(a);
  for (std::size_t i = 0; i < 7; ++i) az(i, i) -= z;
  ComplexMatrix prod = az * r;
  for (std::size_t i = 0; i < 7; ++i) prod(i, i) -= 1.0;
  EXPECT_LT(prod.max_abs(), 1e-10);
}

TEST(Resolvent, RealZRejected) {
  EXPECT_THROW(resolvent(SymmetricMatrix(2), cdouble(1.0, 0.0)), std::domain_error);
}

TEST(Resolvent, ResolventIdentity) {
  RngState rng(16);
  for (int rep = 0; rep < 20; ++rep) {
    const SymmetricMatrix x = random_symmetric(6, rng), a = random_symmetric(6, rng);
    const cdouble z(rng.normal(), 0.5 + rng.uniform());
    const ComplexMatrix gxa = resolvent(x + a, z), gx = resolvent(x, z);
    const ComplexMatrix lhs = gxa - gx;
    ComplexMatrix rhs = gxa * ComplexMatrix::from(a) * gx;
    const ComplexMatrix diff = lhs - (ComplexMatrix(6) - rhs);
    EXPECT_LT(diff.max_abs(), 1e-9);
  }
}

TEST(Resolvent, EntryDerivative) {
  RngState rng(17);
  const SymmetricMatrix x = random_symmetric(6, rng);
  const cdouble z(0.2, 1.0);
  const ComplexMatrix g = resolvent(x, z);
  const double h = 1e-5;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      SymmetricMatrix xp = x, xm = x;
      xp.set(i, j, x(i, j) + h);
      xm.set(i, j, x(i, j) - h);
      const ComplexMatrix gp = resolvent(xp, z), gm = resolvent(xm, z);
      for (std::size_t u = 0; u < 6; ++u)
        for (std::size_t v = 0; v < 6; ++v) {
          const cdouble fd = (gp(u, v) - gm(u, v)) / (2 * h);
          const cdouble exact = -g(u, i) * g(j, v) - g(u, j) * g(i, v);
          EXPECT_LT(std::abs(fd - exact), 1e-6);
        }
    }
}

TEST(PrincipalSubmatrix, Examples) {
  EXPECT_EQ(principal_submatrix(SymmetricMatrix(1, {5.0}), 0).size(), 0u);
  const SymmetricMatrix s = principal_submatrix(SymmetricMatrix(2, {1, 2, 2, 4}), 0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s(0, 0), 4.0);
  EXPECT_THROW(principal_submatrix(SymmetricMatrix(2), 2), std::out_of_range);
}

TEST(Spectra, InterlacingOnRandomDraws) {
  RngState rng(18);
  for (int rep = 0; rep < 100; ++rep) {
    const SymmetricMatrix a = random_symmetric(6, rng);
    const auto l = symmetric_eigenvalues(a);
    for (std::size_t i = 0; i < 6; ++i) {
      const auto mu = symmetric_eigenvalues(principal_submatrix(a, i));
      for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_LE(l[k], mu[k] + 1e-12);
        EXPECT_LE(mu[k], l[k + 1] + 1e-12);
      }
    }
  }
}

TEST(Spectra, HoffmanWielandtAndLipschitz) {
  RngState rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rep % 20;
    const SymmetricMatrix a = random_symmetric(n, rng), b = random_symmetric(n, rng);
    const auto la = symmetric_eigenvalues(a), lb = symmetric_eigenvalues(b);
    double lhs = 0, tr = 0, upper = 0;
    for (std::size_t k = 0; k < n; ++k) lhs += (la[k] - lb[k]) * (la[k] - lb[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = a(i, j) - b(i, j);
        tr += d * d;
        if (i <= j) upper += d * d;
      }
    EXPECT_LE(lhs, tr * (1 + 1e-12));
    EXPECT_LE(tr, 2 * upper * (1 + 1e-12));
    for (std::size_t k = 0; k < n; ++k) EXPECT_LE(std::fabs(la[k] - lb[k]), std::sqrt(2 * upper) + 1e-12);
  }
}

TEST(Determinant, LogSpaceLu) {
  EXPECT_NEAR(determinant({2, 1, 1, 3}, 2), 5.0, 1e-14);
  EXPECT_NEAR(determinant({0, 1, 1, 0}, 2), -1.0, 1e-15);
  EXPECT_EQ(determinant({1, 2, 2, 4}, 2), 0.0);
  const LogDeterminant ld = lu_log_determinant({1e200, 0, 0, 1e200}, 2);
  EXPECT_NEAR(ld.log_abs, 400 * std::log(10.0), 1e-9);
  EXPECT_EQ(ld.sign, 1);
}
