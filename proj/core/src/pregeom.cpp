#include "bicolor/pregeom.hpp"

#include <algorithm>
#include <map>

#include "bicolor/error.hpp"

namespace bicolor {

ElementSet make_set(std::vector<std::size_t> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool set_contains(const ElementSet& a, std::size_t x) {
  return std::binary_search(a.begin(), a.end(), x);
}

ElementSet iota_set(std::size_t n) {
  ElementSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

Geometry Geometry::linear(std::size_t ambient_dim,
                          const std::vector<std::vector<Rational>>& payloads) {
  Geometry g;
  g.backend_ = Backend::linear(ambient_dim);
  g.vectors_.reserve(payloads.size());
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    require(payloads[i].size() == ambient_dim, ErrorCode::kDimensionMismatch,
            "payload " + std::to_string(i) + " has length " + std::to_string(payloads[i].size()) +
                ", ambient dimension is " + std::to_string(ambient_dim));
    SparseVector v = primitive_from_rational(payloads[i]);
    require(!v.empty(), ErrorCode::kInvalidInput,
            "payload " + std::to_string(i) + " is the zero vector");
    g.vectors_.push_back(std::move(v));
  }
  return g;
}

Geometry Geometry::free(std::size_t count) {
  Geometry g;
  g.backend_ = Backend::free();
  g.vectors_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.vectors_.push_back({{static_cast<std::uint32_t>(i), BigInt(1)}});
  }
  return g;
}

namespace {

void check_indices(const Geometry& g, const ElementSet& a) {
  for (std::size_t i : a) {
    require(i < g.size(), ErrorCode::kUnknownElement, "element index " + std::to_string(i));
  }
}

}  // namespace

EchelonSpan span_of(const Geometry& g, const ElementSet& a) {
  check_indices(g, a);
  EchelonSpan span;
  for (std::size_t i : a) span.push(g.vector(i));
  return span;
}

std::size_t rank(const Geometry& g, const ElementSet& a) {
  check_indices(g, a);
  if (g.is_free()) return a.size();
  return span_of(g, a).rank();
}

std::size_t rel_rank(const Geometry& g, const ElementSet& a, const ElementSet& x) {
  check_indices(g, a);
  check_indices(g, x);
  if (g.is_free()) return set_minus(a, x).size();
  EchelonSpan span = span_of(g, x);
  std::size_t base = span.rank();
  for (std::size_t i : a) span.push(g.vector(i));
  return span.rank() - base;
}

ElementSet acl_in(const Geometry& g, const ElementSet& a, const ElementSet& m) {
  require(is_subset(a, m), ErrorCode::kNotInAmbient, "acl_in: A is not contained in M");
  if (g.is_free()) return a;
  EchelonSpan span = span_of(g, a);
  ElementSet out;
  for (std::size_t i : m) {
    if (set_contains(a, i) || span.contains(g.vector(i))) out.push_back(i);
  }
  return out;
}

bool dim_independent(const Geometry& g, const ElementSet& y, const ElementSet& z,
                     const ElementSet& x) {
  return rel_rank(g, y, set_union(x, z)) == rel_rank(g, y, x);
}

std::size_t bareiss_rank(const Geometry& g, const ElementSet& a) {
  check_indices(g, a);
  std::map<std::uint32_t, std::size_t> columns;
  for (std::size_t i : a) {
    for (const auto& e : g.vector(i)) columns.emplace(e.col, 0);
  }
  std::size_t next = 0;
  for (auto& [col, slot] : columns) slot = next++;
  std::vector<std::vector<BigInt>> dense(a.size(), std::vector<BigInt>(columns.size(), BigInt(0)));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (const auto& e : g.vector(a[r])) dense[r][columns[e.col]] = e.val;
  }
  return bareiss_rank(std::move(dense));
}

}  // namespace bicolor
