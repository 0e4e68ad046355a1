#pragma once

// Shared basics: symbol/class id typedefs, error types, lexicographic helpers,
// a deterministic uniform draw, and saturating integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace spg {

using Symbol = int;   // symbols are 1-based: 1..n
using ClassId = int;  // vertex class identifiers, nonnegative

// Contract violations: unknown ids, parameters outside the documented domain.
class InvalidArgument : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An exhaustive computation would exceed its candidate budget.
class ResourceLimit : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexicographic order on sorted symbol vectors: {1} < {1,3} < {2}.
inline bool lex_less(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Deterministic uniform draw in [0, k), k >= 1. Avoids
// std::uniform_int_distribution, whose output is implementation-defined.
template <class Rng>
uint64_t rng_below(Rng& rng, uint64_t k) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * k) >> 64);
}

inline constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

inline uint64_t sat_add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s < a ? kSaturated : s;
}

inline uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<uint64_t>(p);
}

}  // namespace spg
