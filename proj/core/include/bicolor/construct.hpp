#pragma once

#include <string>
#include <vector>

#include "bicolor/check.hpp"
#include "bicolor/exactnum.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

struct Extension {
  ColoredStructure structure;
  std::vector<std::string> added;
  std::vector<Check> checks;
};

// n plain points in span(B) such that every |B|-subset of B u D is a basis
// over A. B must be independent over A.
Extension generic_basis_extension(const ElementSet& a, const ElementSet& b, std::size_t n,
                                  const ColoredStructure& s);

struct RootedFamily {
  ElementSet root;
  std::vector<std::size_t> members;  // indices into the family, petals disjoint
  std::size_t discarded = 0;          // members over which the root is not closed
  std::size_t discard_bound = 0;      // floor(k / epsilon_k)
};

// Finds a root A and at least n members B_i with pairwise intersections
// exactly A and A <= B_i. All members must have the same size k.
RootedFamily delta_system_closed_root(const std::vector<ElementSet>& family, std::size_t n,
                                      const ColoredStructure& s);

// Result of the patch constructions. The structure is the substructure B
// extended by the new points, on S's coordinates plus fresh ones.
struct PatchResult {
  ColoredStructure structure;
  std::vector<std::string> added;
  ApproximationPair pair;  // (s, k) of one patch
  std::size_t copies = 1;
  ExactValue value;        // delta(D/B) for one patch, delta(D*/A) for unions
  bool exhaustive = true;  // false when some check was sampled
  std::vector<Check> checks;
};

// Irrational alpha, A <= B, B transcendental over A, delta(B/A) > epsilon:
// k colored points with -epsilon < delta(D/B) < 0, every proper part of them
// keeping delta(D'/B) >= 0, and A <= D.
PatchResult transcendental_patch(const ElementSet& a, const ElementSet& b, const Rational& epsilon,
                                 const ColoredStructure& s);
PatchResult transcendental_patch(const ElementSet& a, const ElementSet& b,
                                 const ExactValue& epsilon, const ColoredStructure& s);

// Free union over B of copies of a transcendental patch, so that
// 0 <= delta(D*/A) < mu while B <= C whenever |C \ B| < n.
PatchResult free_power_patch(const ElementSet& a, const ElementSet& b, const Rational& mu,
                             std::size_t n, const ColoredStructure& s);

// Rational alpha = m/n < 1: a minimal pair (B, D) with delta(D/B) = -1/n and
// more than t new points.
PatchResult rational_minimal_extension(const ElementSet& a, const ElementSet& b, unsigned t,
                                       const ColoredStructure& s);

// delta(B/A) = p/n: p free copies of the minimal extension over B, giving
// delta(D*/A) = 0.
PatchResult rational_zero_extension(const ElementSet& a, const ElementSet& b, unsigned t,
                                    const ColoredStructure& s);

struct ChainLevel {
  std::vector<std::string> d;  // D_n, cumulative
  std::vector<std::string> e;  // independent new points of this level
  std::vector<std::string> f;  // dependent new points of this level
  ApproximationPair pair;
  ExactValue value;   // s - alpha*k
  ExactValue window;  // -(1 - alpha)/2^n, the lower bound for value
};

struct ChainResult {
  ColoredStructure structure;
  std::vector<ChainLevel> levels;  // levels[0] is D_0
  std::vector<Check> checks;
};

// D_0 c D_1 c ... c D_depth, each consecutive pair minimal, with the
// level-n drop inside (-(1 - alpha)/2^n, 0). Only the points of D are
// colored, including the seed point.
ChainResult minimal_pair_chain(const Alpha& alpha, std::size_t depth, std::size_t ambient_budget);

}  // namespace bicolor
