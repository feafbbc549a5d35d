#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Numerical failure of an otherwise well-posed request: eigensolver
// non-convergence, a truncated domain that failed its decay check, an
// exhausted step-halving budget. Distinct from std::invalid_argument /
// std::domain_error, which flag bad input.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace detail
}  // namespace rmt
