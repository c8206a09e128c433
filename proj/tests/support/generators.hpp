#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bicolor/structure.hpp"

namespace bicolor::testing {

using Rng = std::mt19937_64;

// The four weights the property suites sample from: 1, 1/2, 2/3, 1/sqrt2.
const std::vector<Alpha>& sample_alphas();
Alpha alpha_one();
Alpha alpha_half();
Alpha alpha_two_thirds();
Alpha alpha_inv_sqrt2();

struct Shape {
  std::size_t min_elements = 1;
  std::size_t max_elements = 8;
  std::size_t min_dim = 1;
  std::size_t max_dim = 5;
  int max_entry = 2;           // entries drawn from [-max_entry, max_entry]
  double color_rate = 0.5;
  double sparse_rate = 0.4;    // chance that an entry is forced to zero
};

// Ids "e0".."e9", then "f0".. so that index order equals id order.
std::string element_id(std::size_t i);

// Random linear structure: nonzero, pairwise distinct payloads. Parallel and
// otherwise dependent points show up often at these sizes.
ColoredStructure random_structure(Rng& rng, const Alpha& alpha, const Shape& shape = {});

// Same, then colors are stripped from least witnesses until the structure
// lies in K+.
ColoredStructure random_k_plus(Rng& rng, const Alpha& alpha, const Shape& shape = {});

// Uniform random subset.
ElementSet random_subset(Rng& rng, const ElementSet& from, double keep = 0.5);
ElementSet random_subset(Rng& rng, std::size_t n, double keep = 0.5);

// A closed, span-closed base M0 of M1 and a copy of it inside M2, for free
// amalgamation. M2 carries M0 through a unimodular change of coordinates,
// under fresh ids, plus new points off span(M0).
struct AmalgamCase {
  ColoredStructure m1, m2;
  std::vector<std::string> base;  // ids in M1
  EmbeddingMap match;             // M1 id -> M2 id
};
AmalgamCase random_amalgam_case(Rng& rng, const Alpha& alpha);

struct PointSpec {
  std::string id;
  std::vector<long> vec;
  bool colored = false;
};

// Linear structure from literal integer payloads.
ColoredStructure make_structure(const Alpha& alpha, std::size_t dim, const std::vector<PointSpec>& points);
ColoredStructure make_free(const Alpha& alpha, const std::vector<std::pair<std::string, bool>>& points);

// a = (1,0) plain, b1 = (0,1) and b2 = (1,1) colored, alpha = 2/3: {a} is
// not closed because delta(b1 b2 / a) = 1 - 4/3.
ColoredStructure witness_structure();

// Every subset of {0..n-1} as a bit mask, decoded.
ElementSet mask_to_set(std::uint64_t mask);
std::uint64_t set_to_mask(const ElementSet& set);

}  // namespace bicolor::testing
