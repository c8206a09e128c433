#pragma once

#include "bicolor/exactnum.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

// delta(A) = dim(A) - alpha * |colored(A)|.
PreDimValue delta(const ColoredStructure& s, const ElementSet& a);
// delta(A / X) = delta(A u X) - delta(X).
PreDimValue delta(const ColoredStructure& s, const ElementSet& a, const ElementSet& x);

// Every subset has nonnegative delta. The answer is cached on the structure.
bool in_k_plus(const ColoredStructure& s);
// A subset of negative delta (least by size, then lexicographic), if any.
std::optional<ElementSet> k_plus_witness(const ColoredStructure& s);
// Throws kNotInKPlus unless in_k_plus(s).
void require_k_plus(const ColoredStructure& s, const char* operation);

// f is total on `from`, injective, preserves color both ways and linear
// relations exactly (same kernel), so it is an embedding of the structures.
bool is_lp_embedding(const EmbeddingMap& f, const ColoredStructure& from, const ColoredStructure& to);
// f maps X bijectively onto Y, preserving color and linear relations; such a
// map extends to an isomorphism of the spans.
bool is_weak_iso(const EmbeddingMap& f, const ColoredStructure& s, const ElementSet& x,
                 const ColoredStructure& t, const ElementSet& y);

// Rank of the pairs (v, w) stacked side by side; equals rank of each side
// exactly when the two families satisfy the same linear relations.
bool same_linear_relations(const ColoredStructure& s, const std::vector<std::size_t>& xs,
                           const ColoredStructure& t, const std::vector<std::size_t>& ys);

}  // namespace bicolor
