#pragma once

#include <optional>
#include <vector>

#include "bicolor/exactnum.hpp"
#include "bicolor/sparse.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

struct Violation {
  ElementSet witness;
  PreDimValue value;  // delta(witness / base), negative
  // False only when a large component forced the fallback to an
  // inclusion-minimal witness that may not be of least size.
  bool least = true;
};

// Least W, by size then lexicographically, among subsets of pool \ base with
// delta(W / base) < 0. Only colored points can occur in such a W.
std::optional<Violation> find_violation(const ColoredStructure& s, const ElementSet& base,
                                        const ElementSet& pool);

// min over W subset of pool \ base of delta(W / base), when every connected
// piece of the colored part is small enough to search exhaustively.
std::optional<PreDimValue> min_relative_delta(const ColoredStructure& s, const ElementSet& base,
                                              const ElementSet& pool);

// Some nonempty subset A of the vectors with rank(A) < alpha*|A|, or nothing.
// Exact for every alpha: decided by a matroid partition of p copies of each
// vector into q independent sets, where p/q is alpha itself or, for
// irrational alpha, the nearest fraction above it with bounded terms.
std::optional<std::vector<std::size_t>> dense_subset(const std::vector<SparseVector>& vectors,
                                                     const Alpha& alpha);

// The fraction used by dense_subset for an irrational alpha: least r/c above
// alpha with r <= max_num and c <= max_den.
Rational upper_fraction(const Alpha& alpha, std::size_t max_num, std::size_t max_den);

}  // namespace bicolor
