#pragma once

#include <string>
#include <vector>

#include "bicolor/check.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

struct AmalgamResult {
  ColoredStructure structure;
  EmbeddingMap left;   // M1 -> amalgam
  EmbeddingMap right;  // M2 -> amalgam
  ElementSet base;     // image of the common part
};

// Free amalgam of M1 and M2 over a common part M0. `base` lists M0 by its
// ids in M1 and `match` sends each of them to its counterpart in M2. M0 must
// be closed and span-closed (acl_in(M0) = M0) on both sides; callers close
// it first, nothing is added silently. The result keeps M1's coordinates and
// puts a complement of M0 in M2 on fresh coordinates.
AmalgamResult free_amalgam(const ColoredStructure& m1, const ColoredStructure& m2,
                           const std::vector<std::string>& base, const EmbeddingMap& match);

// f is an embedding with closed image.
bool verify_strong(const EmbeddingMap& f, const ColoredStructure& from, const ColoredStructure& to);
// part1 and part2 meet exactly in base and are dim-independent over it.
bool verify_free(const ElementSet& part1, const ElementSet& part2, const ElementSet& base,
                 const ColoredStructure& n);

// Membership, strength of both embeddings, freeness and the rank identity.
std::vector<Check> verify_amalgam(const AmalgamResult& result, const ColoredStructure& m1,
                                  const ColoredStructure& m2);

ElementSet image_of(const EmbeddingMap& f, const ColoredStructure& target);

}  // namespace bicolor
