#pragma once

// Robinson-Schensted-Knuth, longest monotone subsequences, standard Young
// tableau counts, and directed last-passage percolation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rmt/error.hpp"
#include "rmt/random.hpp"

namespace rmt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// One-line notation over 1..n.
struct Permutation {
  std::vector<int> values;

  std::size_t size() const { return values.size(); }
  bool valid() const {
    std::vector<bool> seen(values.size() + 1, false);
    for (int v : values) {
      if (v < 1 || static_cast<std::size_t>(v) > values.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
  bool operator==(const Permutation&) const = default;
};

inline Permutation make_permutation(std::vector<int> values) {
  Permutation p{std::move(values)};
  detail::require(p.valid(), "permutation must list 1..n exactly once");
  return p;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p;
  p.values.resize(n);
  std::iota(p.values.begin(), p.values.end(), 1);
  return p;
}

// Fisher-Yates on the counter-based stream.
inline Permutation sample_permutation(std::size_t n, RngState& rng) {
  Permutation p = identity_permutation(n);
  for (std::size_t i = n; i > 1; --i) std::swap(p.values[i - 1], p.values[rng.uniform_int(i)]);
  return p;
}

struct YoungDiagram {
  std::vector<unsigned> parts;  // weakly decreasing, positive

  bool valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] == 0) return false;
      if (i > 0 && parts[i] > parts[i - 1]) return false;
    }
    return true;
  }
  unsigned size() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
  std::size_t rows() const { return parts.size(); }
  bool operator==(const YoungDiagram&) const = default;
};

// Rows of a tableau, top row first.
struct Tableau {
  std::vector<std::vector<int>> rows;

  YoungDiagram shape() const {
    YoungDiagram d;
    for (const auto& r : rows) d.parts.push_back(static_cast<unsigned>(r.size()));
    return d;
  }
  std::size_t top_row_length() const { return rows.empty() ? 0 : rows.front().size(); }
  std::size_t row_count() const { return rows.size(); }
  std::size_t cell_count() const {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.size();
    return c;
  }
  bool operator==(const Tableau&) const = default;
};

// Rows and columns strictly increasing, entries exactly 1..n.
inline bool is_standard(const Tableau& t) {
  if (!t.shape().valid()) return false;
  const std::size_t n = t.cell_count();
  std::vector<bool> seen(n + 1, false);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      const int v = t.rows[r][c];
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[v]) return false;
      seen[v] = true;
      if (c > 0 && t.rows[r][c - 1] >= v) return false;
      if (r > 0 && t.rows[r - 1][c] >= v) return false;
    }
  return true;
}

// Rows weakly increasing, columns strictly increasing.
inline bool is_semistandard(const Tableau& t) {
  if (!t.shape().valid()) return false;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      const int v = t.rows[r][c];
      if (c > 0 && t.rows[r][c - 1] > v) return false;
      if (r > 0 && t.rows[r - 1][c] >= v) return false;
    }
  return true;
}

using StandardTableau = Tableau;
using SemistandardTableau = Tableau;

struct TableauPair {
  Tableau p;  // insertion tableau
  Tableau q;  // recording tableau
};

namespace detail {

// Row-inserts x, bumping the leftmost entry strictly greater than x; records
// `label` in q at the new cell.
inline void row_insert(TableauPair& t, int x, int label) {
  std::size_t r = 0;
  for (;; ++r) {
    if (r == t.p.rows.size()) {
      t.p.rows.push_back({x});
      t.q.rows.push_back({label});
      return;
    }
    auto& row = t.p.rows[r];
    auto it = std::upper_bound(row.begin(), row.end(), x);
    if (it == row.end()) {
      row.push_back(x);
      t.q.rows[r].push_back(label);
      return;
    }
    std::swap(*it, x);
  }
}

}  // namespace detail

inline std::size_t lis_length(const Permutation& p) {
  detail::require(p.valid(), "lis_length: malformed permutation");
  std::vector<int> piles;  // patience sorting: top card of each pile
  for (int v : p.values) {
    auto it = std::lower_bound(piles.begin(), piles.end(), v);
    if (it == piles.end())
      piles.push_back(v);
    else
      *it = v;
  }
  return piles.size();
}

inline std::size_t lds_length(const Permutation& p) {
  detail::require(p.valid(), "lds_length: malformed permutation");
  Permutation r = p;
  const int n = static_cast<int>(p.size());
  for (int& v : r.values) v = n + 1 - v;
  return lis_length(r);
}

inline TableauPair rsk(const Permutation& p) {
  detail::require(p.valid(), "rsk: malformed permutation");
  TableauPair t;
  for (std::size_t i = 0; i < p.size(); ++i) detail::row_insert(t, p.values[i], static_cast<int>(i + 1));
  return t;
}

// Reverse bumping: remove the cell holding n, n-1, ..., 1 in Q and push the
// matching P entry back up through the rows.
inline Permutation rsk_inverse(Tableau p, Tableau q) {
  detail::require(p.shape() == q.shape(), "rsk_inverse: shapes differ");
  detail::require(is_standard(p) && is_standard(q), "rsk_inverse: tableaux must be standard");
  const std::size_t n = p.cell_count();
  Permutation out;
  out.values.assign(n, 0);
  for (std::size_t k = n; k >= 1; --k) {
    std::size_t r = 0;
    while (q.rows[r].back() != static_cast<int>(k)) ++r;
    q.rows[r].pop_back();
    int x = p.rows[r].back();
    p.rows[r].pop_back();
    if (p.rows[r].empty()) {
      p.rows.erase(p.rows.begin() + static_cast<long>(r));
      q.rows.erase(q.rows.begin() + static_cast<long>(r));
    }
    while (r-- > 0) {
      auto& row = p.rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), x);  // first entry >= x
      --it;                                                   // largest entry < x
      std::swap(*it, x);
    }
    out.values[k - 1] = x;
  }
  return out;
}

// Nonnegative integer grid; entry (i, j) is the weight at lattice point (i, j).
struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> w;

  WeightMatrix() = default;
  WeightMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), w(r * c, 0) {}
  WeightMatrix(std::size_t r, std::size_t c, std::vector<std::uint64_t> values)
      : rows(r), cols(c), w(std::move(values)) {
    detail::require(w.size() == r * c, "WeightMatrix: entry count must be rows*cols");
  }

  std::uint64_t operator()(std::size_t i, std::size_t j) const { return w[i * cols + j]; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return w[i * cols + j]; }
};

// Two-row array holding the column (i, j) exactly w_ij times (1-based
// indices), columns in lexicographic order.
struct GeneralizedPermutation {
  std::vector<int> top;
  std::vector<int> bottom;
  bool operator==(const GeneralizedPermutation&) const = default;
};

inline GeneralizedPermutation generalized_permutation(const WeightMatrix& w) {
  GeneralizedPermutation g;
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j)
      for (std::uint64_t c = 0; c < w(i, j); ++c) {
        g.top.push_back(static_cast<int>(i + 1));
        g.bottom.push_back(static_cast<int>(j + 1));
      }
  return g;
}

// RSK on the generalized permutation of w: P is filled by the bottom row, Q by
// the top row; both semistandard and of the same shape.
inline TableauPair rsk_generalized(const WeightMatrix& w) {
  const GeneralizedPermutation g = generalized_permutation(w);
  TableauPair t;
  for (std::size_t k = 0; k < g.top.size(); ++k) detail::row_insert(t, g.bottom[k], g.top[k]);
  return t;
}

// G = w_ij + max(G(i-1, j), G(i, j-1)) over up/right lattice paths.
inline std::uint64_t lpp_grid(const WeightMatrix& w) {
  detail::require(w.rows > 0 && w.cols > 0, "lpp_grid: empty grid");
  std::vector<std::uint64_t> g(w.cols, 0);
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) {
      const std::uint64_t up = g[j];
      const std::uint64_t left = j > 0 ? g[j - 1] : 0;
      g[j] = w(i, j) + std::max(up, left);
    }
  return g.back();
}

// iid geometric weights, P(w = k) = (1 - q) q^k, by inversion.
inline WeightMatrix sample_geometric_matrix(std::size_t rows, std::size_t cols, double q, RngState& rng) {
  detail::require(q > 0.0 && q < 1.0, "sample_geometric_matrix: q must lie in (0, 1)");
  WeightMatrix w(rows, cols);
  const double lq = std::log(q);
  for (auto& v : w.w) v = static_cast<std::uint64_t>(std::floor(std::log(rng.uniform()) / lq));
  return w;
}

inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

// f(lambda) = n! / prod hook(x).
inline BigInt hook_length_count(const YoungDiagram& d) {
  detail::require(d.valid(), "hook_length_count: invalid diagram");
  BigInt hooks = 1;
  for (std::size_t r = 0; r < d.parts.size(); ++r)
    for (unsigned c = 0; c < d.parts[r]; ++c) {
      unsigned below = 0;
      for (std::size_t rr = r + 1; rr < d.parts.size() && d.parts[rr] > c; ++rr) ++below;
      hooks *= (d.parts[r] - c - 1) + below + 1;
    }
  return factorial(d.size()) / hooks;
}

// f(lambda) = n! prod_{i<j} (h_i - h_j) / prod h_i!, h_i = lambda_i + (r - i),
// the h_i strictly decreasing.
inline BigInt frobenius_young_count(const YoungDiagram& d) {
  detail::require(d.valid(), "frobenius_young_count: invalid diagram");
  const std::size_t r = d.parts.size();
  std::vector<unsigned> h(r);
  for (std::size_t i = 0; i < r; ++i) h[i] = d.parts[i] + static_cast<unsigned>(r - 1 - i);
  BigInt num = factorial(d.size());
  BigInt den = 1;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) num *= (h[i] - h[j]);
    den *= factorial(h[i]);
  }
  return num / den;
}

// All partitions of n, parts weakly decreasing, in reverse lexicographic order.
inline std::vector<YoungDiagram> partitions(unsigned n) {
  std::vector<YoungDiagram> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
    if (remaining == 0) {
      out.push_back(YoungDiagram{cur});
      return;
    }
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Number of permutations of n whose longest decreasing subsequence is r: the
// sum of f(lambda)^2 over shapes with exactly r rows.
inline BigInt count_perms_by_lds(unsigned n, unsigned r) {
  detail::require(r <= n, "count_perms_by_lds: r must not exceed n");
  detail::require(n <= 10, "count_perms_by_lds: n limited to 10");
  BigInt total = 0;
  for (const YoungDiagram& d : partitions(n))
    if (d.rows() == r) {
      const BigInt f = frobenius_young_count(d);
      total += f * f;
    }
  return total;
}

// The same count in the h-coordinates:
//   (n!)^2 sum_{h_1 > ... > h_r >= 1, sum h = n + r(r-1)/2} prod_{i<j} (h_i - h_j)^2 / prod (h_i!)^2.
inline BigInt count_perms_by_lds_hsum(unsigned n, unsigned r) {
  detail::require(r <= n && n <= 8, "count_perms_by_lds_hsum: need r <= n <= 8");
  if (r == 0) return n == 0 ? 1 : 0;
  const unsigned target = n + r * (r - 1) / 2;
  BigRational sum = 0;
  std::vector<unsigned> h;
  auto rec = [&](auto&& self, unsigned remaining, unsigned bound) -> void {
    const std::size_t left = r - h.size();
    if (left == 0) {
      if (remaining != 0) return;
      BigInt num = 1, den = 1;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) num *= (h[i] - h[j]) * (h[i] - h[j]);
        const BigInt f = factorial(h[i]);
        den *= f * f;
      }
      sum += BigRational(num, den);
      return;
    }
    for (unsigned v = std::min(remaining, bound); v >= left; --v) {
      h.push_back(v);
      self(self, remaining - v, v - 1);
      h.pop_back();
    }
  };
  rec(rec, target, target);
  const BigInt nf = factorial(n);
  const BigRational total = sum * BigRational(nf * nf);
  detail::require(denominator(total) == 1, "count_perms_by_lds_hsum: non-integral total");
  return numerator(total);
}

}  // namespace rmt
