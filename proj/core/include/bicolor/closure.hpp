#pragma once

#include <vector>

#include "bicolor/exactnum.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

struct ClosedReport {
  bool closed = true;
  ElementSet witness;  // least violating set when not closed
  PreDimValue witness_delta;
};

// X <= S: delta(W / X) >= 0 for every W inside S.
ClosedReport is_closed(const ElementSet& x, const ColoredStructure& s);
// X <= B for X inside the substructure B of S.
ClosedReport is_closed_in(const ElementSet& x, const ElementSet& b, const ColoredStructure& s);

struct ClosureResult {
  ElementSet closure;
  std::size_t steps = 0;  // witnesses adjoined
};

ClosureResult closure(const ElementSet& a, const ColoredStructure& s);
// Union of all intrinsic extensions of A adding fewer than n points.
ElementSet closure_n(const ElementSet& a, const ColoredStructure& s, std::size_t n);

bool is_minimal_pair(const ElementSet& a, const ElementSet& b, const ColoredStructure& s);
bool is_intrinsic(const ElementSet& a, const ElementSet& b, const ColoredStructure& s);
// A = B_0 c B_1 c ... c B_m = B with each (B_i, B_i+1) a minimal pair.
// Requires is_intrinsic(a, b, s).
std::vector<ElementSet> intrinsic_tower(const ElementSet& a, const ElementSet& b,
                                        const ColoredStructure& s);

// Least delta over supersets of A inside S.
PreDimValue d_value(const ElementSet& a, const ColoredStructure& s);
// Points x with D(A u {x}) = D(A).
ElementSet big_cl(const ElementSet& a, const ColoredStructure& s);

struct DIndependence {
  bool independent = false;
  bool base_closed = false;
  PreDimValue d_over_base;       // D(A / Z)
  PreDimValue d_over_base_and_b;  // D(A / ZB)
  ElementSet closure_az, closure_bz, closure_z;
};

DIndependence d_independent(const ElementSet& a, const ElementSet& b, const ElementSet& z,
                            const ColoredStructure& s);

}  // namespace bicolor
