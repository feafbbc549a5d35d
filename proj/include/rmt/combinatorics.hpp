#pragma once

// Exact counting behind the moment method: Catalan numbers, Dyck paths,
// rooted plane trees, and the finite-N trace-moment word sum.

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rmt/error.hpp"

namespace rmt {

using count_t = std::uint64_t;

namespace detail {

inline count_t checked_mul(count_t a, count_t b) {
  count_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in count");
  return r;
}

inline count_t checked_add(count_t a, count_t b) {
  count_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in count");
  return r;
}

}  // namespace detail

inline count_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r * (n-k+i) is divisible by i at every step
    if (r > std::numeric_limits<count_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<count_t>(r);
}

// C_m = binom(2m, m) / (m + 1), built by C_{j+1} = C_j * 2(2j+1) / (j+2).
inline count_t catalan(unsigned m) {
  unsigned __int128 c = 1;
  for (unsigned j = 0; j < m; ++j) {
    c = c * (2 * (2 * j + 1));
    c /= (j + 2);
    if (c > std::numeric_limits<count_t>::max()) throw std::overflow_error("catalan overflow");
  }
  return static_cast<count_t>(c);
}

struct DyckPath {
  std::vector<int> steps;  // each +1 or -1

  bool valid() const {
    int h = 0;
    for (int s : steps) {
      if (s != 1 && s != -1) return false;
      h += s;
      if (h < 0) return false;
    }
    return h == 0;
  }
  bool operator==(const DyckPath&) const = default;
};

struct RootedPlaneTree {
  std::vector<RootedPlaneTree> children;  // ordered

  std::size_t edge_count() const {
    std::size_t e = children.size();
    for (const auto& c : children) e += c.edge_count();
    return e;
  }
  bool operator==(const RootedPlaneTree&) const = default;
};

inline std::vector<DyckPath> enumerate_dyck_paths(unsigned k) {
  detail::require(k % 2 == 0, "enumerate_dyck_paths: length must be even");
  detail::require(k <= 24, "enumerate_dyck_paths: length limited to 24");
  std::vector<DyckPath> out;
  std::vector<int> steps(k);
  // ups: +1 steps used so far, height: current level
  auto rec = [&](auto&& self, unsigned pos, unsigned ups, int height) -> void {
    if (pos == k) {
      out.push_back(DyckPath{steps});
      return;
    }
    if (ups < k / 2) {
      steps[pos] = 1;
      self(self, pos + 1, ups + 1, height + 1);
    }
    if (height > 0) {
      steps[pos] = -1;
      self(self, pos + 1, ups, height - 1);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

// Walk the tree contour: an up-step descends to a new child, a down-step
// returns to the parent.
inline RootedPlaneTree dyck_to_tree(const DyckPath& p) {
  detail::require(p.valid(), "dyck_to_tree: malformed Dyck path");
  RootedPlaneTree root;
  std::vector<RootedPlaneTree*> stack{&root};
  for (int s : p.steps) {
    if (s == 1) {
      stack.back()->children.emplace_back();
      stack.push_back(&stack.back()->children.back());
    } else {
      stack.pop_back();
    }
  }
  return root;
}

inline DyckPath tree_to_dyck(const RootedPlaneTree& t) {
  DyckPath p;
  auto rec = [&](auto&& self, const RootedPlaneTree& node) -> void {
    for (const auto& c : node.children) {
      p.steps.push_back(1);
      self(self, c);
      p.steps.push_back(-1);
    }
  };
  rec(rec, t);
  return p;
}

// (1/n) E trace(X^k) for a Wigner matrix X = Z/sqrt(n), Z iid for i <= j with
// E Z^p = entry_moments[p]. Sums over all n^k closed index words; each word's
// expectation factorizes over its distinct undirected edges.
inline double exact_trace_moment(unsigned n, unsigned k, std::span<const double> entry_moments) {
  detail::require(n >= 1, "exact_trace_moment: n must be >= 1");
  detail::require(std::pow(static_cast<double>(n), static_cast<double>(k)) <= 1e7,
                  "exact_trace_moment: n^k exceeds the 1e7 word budget");
  detail::require(entry_moments.size() >= k + 1,
                  "exact_trace_moment: moment table must cover orders 0..k");
  if (k == 0) return 1.0;

  std::vector<unsigned> word(k, 0);
  std::vector<std::pair<std::uint32_t, unsigned>> edges;  // (edge key, multiplicity)
  edges.reserve(k);
  double total = 0.0;
  for (;;) {
    edges.clear();
    for (unsigned t = 0; t < k; ++t) {
      unsigned a = word[t], b = word[(t + 1) % k];
      if (a > b) std::swap(a, b);
      const std::uint32_t key = a * n + b;
      auto it = std::find_if(edges.begin(), edges.end(),
                             [key](const auto& e) { return e.first == key; });
      if (it == edges.end())
        edges.emplace_back(key, 1u);
      else
        ++it->second;
    }
    double w = 1.0;
    for (const auto& [key, mult] : edges) {
      w *= entry_moments[mult];
      if (w == 0.0) break;
    }
    total += w;

    unsigned pos = 0;
    while (pos < k && ++word[pos] == n) word[pos++] = 0;
    if (pos == k) break;
  }
  const double nd = static_cast<double>(n);
  return total / (nd * std::pow(nd, 0.5 * k));
}

// E Z^p for a standard normal: (p-1)!! for even p, 0 for odd p.
inline std::vector<double> gaussian_moments(unsigned max_order) {
  std::vector<double> m(max_order + 1, 0.0);
  m[0] = 1.0;
  for (unsigned p = 2; p <= max_order; p += 2) m[p] = m[p - 2] * (p - 1);
  return m;
}

}  // namespace rmt
