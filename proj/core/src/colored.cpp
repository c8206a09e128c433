#include "bicolor/colored.hpp"

#include <set>

#include "bicolor/error.hpp"
#include "bicolor/search.hpp"

namespace bicolor {

PreDimValue delta(const ColoredStructure& s, const ElementSet& a) {
  return {static_cast<std::int64_t>(rank(s.geometry(), a)), s.color_count(a)};
}

PreDimValue delta(const ColoredStructure& s, const ElementSet& a, const ElementSet& x) {
  ElementSet ax = set_union(a, x);
  return delta(s, ax) - delta(s, x);
}

std::optional<ElementSet> k_plus_witness(const ColoredStructure& s) {
  auto v = find_violation(s, {}, s.all());
  s.cache_k_plus(!v.has_value());
  if (!v) return std::nullopt;
  return v->witness;
}

bool in_k_plus(const ColoredStructure& s) {
  if (auto cached = s.cached_k_plus()) return *cached;
  return !k_plus_witness(s).has_value();
}

void require_k_plus(const ColoredStructure& s, const char* operation) {
  require(in_k_plus(s), ErrorCode::kNotInKPlus,
          std::string(operation) + ": structure has a subset of negative delta");
}

namespace {

std::uint32_t column_span(const ColoredStructure& s) {
  return static_cast<std::uint32_t>(s.backend().kind == BackendKind::kFree ? s.size()
                                                                           : s.backend().ambient_dim);
}

}  // namespace

bool same_linear_relations(const ColoredStructure& s, const std::vector<std::size_t>& xs,
                           const ColoredStructure& t, const std::vector<std::size_t>& ys) {
  require(xs.size() == ys.size(), ErrorCode::kInternal, "same_linear_relations: length mismatch");
  require(s.backend().kind == t.backend().kind, ErrorCode::kBackendMismatch,
          "structures use different pregeometries");
  const std::uint32_t offset = column_span(s);
  const bool linear = s.backend().kind == BackendKind::kLinear;
  EchelonSpan left, right, both;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const SparseVector& v = s.geometry().vector(xs[i]);
    const SparseVector& w = t.geometry().vector(ys[i]);
    // Geometry rows are rescaled to primitive form, which forgets scalar
    // relations such as x = 2y; the joined row is built from the payloads.
    SparseVector joined;
    if (linear) {
      std::vector<Rational> row = s.element(xs[i]).vec;
      row.resize(offset, Rational(0));
      const auto& tail = t.element(ys[i]).vec;
      row.insert(row.end(), tail.begin(), tail.end());
      joined = primitive_from_rational(row);
    } else {
      joined = v;
      for (const auto& e : w) joined.push_back({e.col + offset, e.val});
    }
    left.push(v);
    right.push(w);
    both.push(joined);
  }
  return left.rank() == both.rank() && right.rank() == both.rank();
}

namespace {

// Resolves f on the ordered domain; nullopt when f is not a well-formed
// injective map from exactly `domain` into t.
std::optional<std::vector<std::size_t>> resolve(const EmbeddingMap& f, const ColoredStructure& s,
                                                const ElementSet& domain,
                                                const ColoredStructure& t) {
  if (f.size() != domain.size()) return std::nullopt;
  std::vector<std::size_t> images;
  std::set<std::size_t> used;
  for (std::size_t i : domain) {
    auto it = f.find(s.id(i));
    if (it == f.end()) return std::nullopt;
    auto target = t.find(it->second);
    if (!target || !used.insert(*target).second) return std::nullopt;
    if (s.is_colored(i) != t.is_colored(*target)) return std::nullopt;
    images.push_back(*target);
  }
  return images;
}

}  // namespace

bool is_lp_embedding(const EmbeddingMap& f, const ColoredStructure& from, const ColoredStructure& to) {
  require(from.backend().kind == to.backend().kind, ErrorCode::kBackendMismatch,
          "structures use different pregeometries");
  ElementSet domain = from.all();
  auto images = resolve(f, from, domain, to);
  if (!images) return false;
  return same_linear_relations(from, domain, to, *images);
}

bool is_weak_iso(const EmbeddingMap& f, const ColoredStructure& s, const ElementSet& x,
                 const ColoredStructure& t, const ElementSet& y) {
  require(s.backend().kind == t.backend().kind, ErrorCode::kBackendMismatch,
          "structures use different pregeometries");
  auto images = resolve(f, s, x, t);
  if (!images) return false;
  if (make_set(*images) != y) return false;
  return same_linear_relations(s, x, t, *images);
}

}  // namespace bicolor
