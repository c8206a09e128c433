#pragma once

#include <cstddef>
#include <vector>

#include "bicolor/numeric.hpp"
#include "bicolor/sparse.hpp"

namespace bicolor {

// Sorted, duplicate-free element indices into a structure.
using ElementSet = std::vector<std::size_t>;

ElementSet make_set(std::vector<std::size_t> items);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_minus(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);
bool set_contains(const ElementSet& a, std::size_t x);
ElementSet iota_set(std::size_t n);

enum class BackendKind { kLinear, kFree };

struct Backend {
  BackendKind kind = BackendKind::kLinear;
  std::size_t ambient_dim = 0;  // linear only

  static Backend linear(std::size_t dim) { return {BackendKind::kLinear, dim}; }
  static Backend free() { return {BackendKind::kFree, 0}; }
  bool operator==(const Backend&) const = default;
};

// The pregeometry restricted to a finite list of points. Linear points are
// stored as primitive integer vectors; the free backend is modelled by unit
// vectors so that one elimination engine serves both.
class Geometry {
 public:
  Geometry() = default;
  static Geometry linear(std::size_t ambient_dim, const std::vector<std::vector<Rational>>& payloads);
  static Geometry free(std::size_t count);

  const Backend& backend() const { return backend_; }
  bool is_free() const { return backend_.kind == BackendKind::kFree; }
  std::size_t size() const { return vectors_.size(); }
  const SparseVector& vector(std::size_t i) const { return vectors_[i]; }

 private:
  Backend backend_;
  std::vector<SparseVector> vectors_;
};

std::size_t rank(const Geometry& g, const ElementSet& a);
// dim(A/X) = rank(A u X) - rank(X).
std::size_t rel_rank(const Geometry& g, const ElementSet& a, const ElementSet& x);
// Points of M lying in the span of A (A must be a subset of M).
ElementSet acl_in(const Geometry& g, const ElementSet& a, const ElementSet& m);
// Y and Z are independent over X: dim(Y / X u Z) = dim(Y / X).
bool dim_independent(const Geometry& g, const ElementSet& y, const ElementSet& z,
                     const ElementSet& x);

EchelonSpan span_of(const Geometry& g, const ElementSet& a);

// Independent rank route (dense Bareiss) used by verifiers.
std::size_t bareiss_rank(const Geometry& g, const ElementSet& a);

}  // namespace bicolor
