#pragma once

// Dense real-symmetric / complex-Hermitian eigenvalues (Householder
// tridiagonalization + implicit-shift QL), LU determinants, and the
// resolvent (A - z)^{-1}. No external numerical library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmt/error.hpp"

namespace rmt {

using cdouble = std::complex<double>;

// Normalization in force for a spectrum.
//   unit_entries     O(1) entries, semicircle edge at 2 sqrt(N)  (GOE/GUE)
//   one_over_sqrt_n  entries scaled by 1/sqrt(N), support [-2, 2] (Wigner)
//   half_weight      GUE divided by sqrt(2), edge at sqrt(2N)     (Hermite e^{-x^2})
enum class Convention { unit_entries, one_over_sqrt_n, half_weight };

inline const char* to_string(Convention c) {
  switch (c) {
    case Convention::unit_entries: return "UNIT_ENTRIES";
    case Convention::one_over_sqrt_n: return "ONE_OVER_SQRT_N";
    case Convention::half_weight: return "HALF_WEIGHT";
  }
  return "?";
}

class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  // Rejects entries that are not exactly symmetric.
  SymmetricMatrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
    detail::require(a_.size() == n * n, "SymmetricMatrix: entry count must be n*n");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        detail::require(a_[i * n + j] == a_[j * n + i], "SymmetricMatrix: entries not symmetric");
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const double> data() const { return a_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    detail::require(a.n_ == b.n_, "dimension mismatch");
    SymmetricMatrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
    return r;
  }
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    detail::require(a.n_ == b.n_, "dimension mismatch");
    SymmetricMatrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
    return r;
  }
  friend SymmetricMatrix operator*(double s, SymmetricMatrix a) {
    for (double& x : a.a_) x *= s;
    return a;
  }
  bool operator==(const SymmetricMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), a_(n * n, cdouble{}) {}

  HermitianMatrix(std::size_t n, std::vector<cdouble> row_major) : n_(n), a_(std::move(row_major)) {
    detail::require(a_.size() == n * n, "HermitianMatrix: entry count must be n*n");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        detail::require(a_[i * n + j] == std::conj(a_[j * n + i]),
                        "HermitianMatrix: entries not Hermitian");
  }

  std::size_t size() const { return n_; }
  cdouble operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Writes (i, j) = v and (j, i) = conj(v); diagonal values must be real.
  void set(std::size_t i, std::size_t j, cdouble v) {
    if (i == j) detail::require(v.imag() == 0.0, "HermitianMatrix: diagonal must be real");
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = std::conj(v);
  }

  std::span<const cdouble> data() const { return a_; }
  bool operator==(const HermitianMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<cdouble> a_;
};

struct TridiagonalSymmetric {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalSymmetric() = default;
  TridiagonalSymmetric(std::vector<double> d, std::vector<double> e)
      : diag(std::move(d)), offdiag(std::move(e)) {
    detail::require(diag.empty() ? offdiag.empty() : offdiag.size() + 1 == diag.size(),
                    "TridiagonalSymmetric: offdiag must have n-1 entries");
  }

  std::size_t size() const { return diag.size(); }

  SymmetricMatrix to_dense() const {
    SymmetricMatrix m(size());
    for (std::size_t i = 0; i < size(); ++i) m.set(i, i, diag[i]);
    for (std::size_t i = 0; i + 1 < size(); ++i) m.set(i, i + 1, offdiag[i]);
    return m;
  }
};

// Ascending eigenvalues of one draw plus the metadata needed to rescale it.
struct SpectralSample {
  std::vector<double> eigenvalues;
  std::size_t n = 0;
  Convention convention = Convention::one_over_sqrt_n;
  double beta = 1.0;

  SpectralSample() = default;
  SpectralSample(std::vector<double> eig, Convention conv, double b)
      : eigenvalues(std::move(eig)), n(eigenvalues.size()), convention(conv), beta(b) {
    detail::require(std::is_sorted(eigenvalues.begin(), eigenvalues.end()),
                    "SpectralSample: eigenvalues must be ascending");
  }

  // Eigenvalues mapped onto the semicircle scale, support [-2, 2].
  std::vector<double> normalized() const {
    double s = 1.0;
    const double rn = std::sqrt(static_cast<double>(n));
    if (convention == Convention::unit_entries) s = 1.0 / rn;
    if (convention == Convention::half_weight) s = std::sqrt(2.0) / rn;
    std::vector<double> out(eigenvalues);
    for (double& x : out) x *= s;
    return out;
  }
};

namespace detail {

inline void require_finite(std::span<const double> xs, const char* who) {
  for (double x : xs)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

// Implicit-shift QL on (d, e) where e[i] couples d[i] and d[i+1]; e has
// length n with e[n-1] unused. Eigenvalues are left in d, unsorted.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const long n = static_cast<long>(d.size());
  if (n <= 1) return;
  const long cap = 30 * n;
  long iterations = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  e[n - 1] = 0.0;
  for (long l = 0; l < n; ++l) {
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > cap)
        throw numerical_error("QL iteration did not converge within 30*n sweeps");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      long i;
      bool deflated = false;
      for (i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

// Householder reduction of a full row-major symmetric matrix (destroyed) to
// tridiagonal form; returns (diag, offdiag-with-trailing-slot).
inline std::pair<std::vector<double>, std::vector<double>> householder_tridiagonalize(
    std::vector<double>& a, std::size_t n) {
  std::vector<double> d(n, 0.0), e(n, 0.0), u(n), p(n);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double* row = &a[i * n];
    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(row[k]);
    if (l == 0 || scale == 0.0) {
      e[i] = row[l];
      d[i] = row[i];
      continue;
    }
    double h = 0.0;
    for (std::size_t k = 0; k <= l; ++k) {
      u[k] = row[k] / scale;
      h += u[k] * u[k];
    }
    const double f = u[l];
    const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    u[l] = f - g;
    double up = 0.0;
    for (std::size_t j = 0; j <= l; ++j) {
      const double* aj = &a[j * n];
      double s = 0.0;
      for (std::size_t k = 0; k <= l; ++k) s += aj[k] * u[k];
      p[j] = s / h;
      up += u[j] * p[j];
    }
    const double kk = up / (2.0 * h);
    for (std::size_t j = 0; j <= l; ++j) p[j] -= kk * u[j];
    for (std::size_t j = 0; j <= l; ++j) {
      double* aj = &a[j * n];
      const double uj = u[j], pj = p[j];
      for (std::size_t k = 0; k <= l; ++k) aj[k] -= uj * p[k] + pj * u[k];
    }
    d[i] = row[i];
  }
  d[0] = a[0];
  // Shift so that e[i] couples d[i] and d[i+1].
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  return {std::move(d), std::move(e)};
}

}  // namespace detail

inline std::vector<double> tridiagonal_eigenvalues(const TridiagonalSymmetric& t) {
  detail::require_finite(t.diag, "tridiagonal_eigenvalues");
  detail::require_finite(t.offdiag, "tridiagonal_eigenvalues");
  std::vector<double> d = t.diag;
  std::vector<double> e(d.size(), 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  detail::ql_implicit(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

inline std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a) {
  detail::require_finite(a.data(), "symmetric_eigenvalues");
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<double> work(a.data().begin(), a.data().end());
  auto [d, e] = detail::householder_tridiagonalize(work, n);
  detail::ql_implicit(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

// Via the real embedding [[Re, -Im], [Im, Re]], whose spectrum is that of H
// with every eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  const std::size_t n = h.size();
  if (n == 0) return {};
  SymmetricMatrix big(2 * n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const cdouble z = h(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("hermitian_eigenvalues: non-finite entry");
      big.set(i, j, z.real());
      big.set(n + i, n + j, z.real());
      big.set(n + i, j, z.imag());
      big.set(n + j, i, -z.imag());
      norm = std::max(norm, std::abs(z));
    }
  }
  const std::vector<double> doubled = symmetric_eigenvalues(big);
  std::vector<double> out(n);
  const double tol = 1e-8 * (1.0 + norm * static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = doubled[2 * k], hi = doubled[2 * k + 1];
    if (hi - lo > tol)
      throw std::logic_error("hermitian_eigenvalues: embedding eigenvalues failed to pair");
    out[k] = 0.5 * (lo + hi);
  }
  return out;
}

inline SymmetricMatrix principal_submatrix(const SymmetricMatrix& a, std::size_t i) {
  const std::size_t n = a.size();
  if (i >= n) throw std::out_of_range("principal_submatrix: index out of range");
  SymmetricMatrix s(n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, cc = 0; c < n; ++c) {
      if (c == i) continue;
      s.set(rr, cc, a(r, c));
      ++cc;
    }
    ++rr;
  }
  return s;
}

// log|det| and sign from LU with partial pivoting; the product is kept in log
// space because Fredholm and density determinants span many decades.
struct LogDeterminant {
  double log_abs = 0.0;
  int sign = 1;
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline LogDeterminant lu_log_determinant(std::vector<double> a, std::size_t n) {
  detail::require(a.size() == n * n, "lu_log_determinant: size mismatch");
  LogDeterminant out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::fabs(a[k * n + k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::fabs(a[r * n + k]) > best) {
        best = std::fabs(a[r * n + k]);
        piv = r;
      }
    }
    if (best == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      out.sign = -out.sign;
    }
    const double pivot = a[k * n + k];
    if (pivot < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::fabs(pivot));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / pivot;
      if (f == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  return out;
}

inline double determinant(std::vector<double> a, std::size_t n) {
  return lu_log_determinant(std::move(a), n).value();
}

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  cdouble operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  cdouble trace() const {
    cdouble t{};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require(a.n_ == b.n_, "dimension mismatch");
    ComplexMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const cdouble aik = a(i, k);
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
    return a;
  }

  static ComplexMatrix from(const SymmetricMatrix& s) {
    ComplexMatrix c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) c(i, j) = s(i, j);
    return c;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cdouble& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<cdouble> a_;
};

// G(z) = (A - z)^{-1} by Gauss-Jordan elimination with partial pivoting.
inline ComplexMatrix resolvent(const SymmetricMatrix& a, cdouble z) {
  detail::require_domain(z.imag() != 0.0, "resolvent: z must have nonzero imaginary part");
  detail::require_finite(a.data(), "resolvent");
  const std::size_t n = a.size();
  ComplexMatrix m = ComplexMatrix::from(a);
  for (std::size_t i = 0; i < n; ++i) m(i, i) -= z;
  ComplexMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(k, c), m(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    }
    const cdouble pivot = m(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      m(k, c) /= pivot;
      inv(k, c) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const cdouble f = m(r, k);
      if (f == cdouble{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) -= f * m(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

}  // namespace rmt
