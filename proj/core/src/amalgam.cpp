#include "bicolor/amalgam.hpp"

#include <set>

#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"

namespace bicolor {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Inverse of a square invertible matrix by Gauss-Jordan elimination.
Matrix inverse(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    check_invariant(pivot < n, "amalgam basis is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational lead = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= lead;
      inv[col][c] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

std::string unique_id(std::string id, const std::set<std::string>& taken, const std::string& prefix) {
  while (taken.count(id)) id = prefix + id;
  return id;
}

}  // namespace

ElementSet image_of(const EmbeddingMap& f, const ColoredStructure& target) {
  std::vector<std::size_t> out;
  for (const auto& [from, to] : f) out.push_back(target.index_of(to));
  return make_set(std::move(out));
}

AmalgamResult free_amalgam(const ColoredStructure& m1, const ColoredStructure& m2,
                           const std::vector<std::string>& base, const EmbeddingMap& match) {
  require(m1.alpha() == m2.alpha(), ErrorCode::kAlphaMismatch, "amalgam sides use different alpha");
  require(m1.backend().kind == m2.backend().kind, ErrorCode::kBackendMismatch,
          "amalgam sides use different pregeometries");
  require_k_plus(m1, "free_amalgam");
  require_k_plus(m2, "free_amalgam");

  const ElementSet base1 = m1.set_of(base);
  require(base1.size() == base.size() && match.size() == base1.size(), ErrorCode::kMatchInvalid,
          "match must pair every base element exactly once");
  std::vector<std::size_t> base1_order, base2_order;
  std::set<std::size_t> used;
  for (std::size_t i : base1) {
    auto it = match.find(m1.id(i));
    require(it != match.end(), ErrorCode::kMatchInvalid, "base element '" + m1.id(i) + "' unmatched");
    auto j = m2.find(it->second);
    require(j.has_value(), ErrorCode::kMatchInvalid, "match target '" + it->second + "' unknown");
    require(used.insert(*j).second, ErrorCode::kMatchInvalid, "match is not injective");
    require(m1.is_colored(i) == m2.is_colored(*j), ErrorCode::kMatchInvalid,
            "match changes the color of '" + m1.id(i) + "'");
    base1_order.push_back(i);
    base2_order.push_back(*j);
  }
  require(same_linear_relations(m1, base1_order, m2, base2_order), ErrorCode::kMatchInvalid,
          "match does not preserve linear relations");
  const ElementSet base2 = make_set(base2_order);
  require(is_closed(base1, m1).closed, ErrorCode::kNotClosed, "base is not closed in M1");
  require(is_closed(base2, m2).closed, ErrorCode::kNotClosed, "base is not closed in M2");
  require(acl_in(m1.geometry(), base1, m1.all()) == base1, ErrorCode::kNotClosed,
          "base is not span-closed in M1");
  require(acl_in(m2.geometry(), base2, m2.all()) == base2, ErrorCode::kNotClosed,
          "base is not span-closed in M2");

  // Ids: the base and M1 keep theirs; clashes with new M2 points get prefixes.
  std::set<std::string> m1_ids;
  for (const auto& e : m1.elements()) m1_ids.insert(e.id);
  std::set<std::string> m2_new_ids;
  for (std::size_t j = 0; j < m2.size(); ++j) {
    if (!set_contains(base2, j)) m2_new_ids.insert(m2.id(j));
  }
  AmalgamResult result;
  std::set<std::string> taken;
  std::vector<GroundElement> elements;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    GroundElement e = m1.element(i);
    if (!set_contains(base1, i) && m2_new_ids.count(e.id)) e.id = "L." + e.id;
    taken.insert(e.id);
    result.left[m1.id(i)] = e.id;
    elements.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < base1_order.size(); ++k) {
    result.right[m2.id(base2_order[k])] = result.left[m1.id(base1_order[k])];
  }
  std::vector<std::size_t> m2_new;
  for (std::size_t j = 0; j < m2.size(); ++j) {
    if (set_contains(base2, j)) continue;
    std::string id = m2.id(j);
    if (m1_ids.count(id)) id = "R." + id;
    id = unique_id(id, taken, "R.");
    taken.insert(id);
    result.right[m2.id(j)] = id;
    m2_new.push_back(j);
  }

  std::size_t new_dim = 0;
  if (m1.backend().kind == BackendKind::kLinear) {
    const std::size_t d1 = m1.backend().ambient_dim;
    const std::size_t d2 = m2.backend().ambient_dim;
    // Basis of M2's space: independent base points first, then unit vectors.
    EchelonSpan span;
    std::vector<std::vector<Rational>> columns;
    std::vector<std::vector<Rational>> targets;  // where each basis vector goes
    for (std::size_t k = 0; k < base2_order.size(); ++k) {
      if (!span.push(m2.geometry().vector(base2_order[k]))) continue;
      columns.push_back(m2.element(base2_order[k]).vec);
      std::vector<Rational> t = m1.element(base1_order[k]).vec;
      targets.push_back(std::move(t));
    }
    const std::size_t shared = columns.size();
    new_dim = d1 + d2 - shared;
    for (auto& e : elements) e.vec.resize(new_dim, Rational(0));
    for (std::size_t c = 0; c < d2 && columns.size() < d2; ++c) {
      SparseVector unit{{static_cast<std::uint32_t>(c), BigInt(1)}};
      if (!span.push(unit)) continue;
      std::vector<Rational> col(d2, Rational(0));
      col[c] = 1;
      columns.push_back(std::move(col));
      std::vector<Rational> t(d1, Rational(0));
      targets.push_back(std::move(t));
    }
    check_invariant(columns.size() == d2, "amalgam basis incomplete");
    for (auto& t : targets) t.resize(new_dim, Rational(0));
    for (std::size_t l = shared; l < d2; ++l) targets[l][d1 + (l - shared)] = 1;
    Matrix basis(d2, std::vector<Rational>(d2));
    for (std::size_t r = 0; r < d2; ++r) {
      for (std::size_t c = 0; c < d2; ++c) basis[r][c] = columns[c][r];
    }
    const Matrix inv = inverse(std::move(basis));
    for (std::size_t j : m2_new) {
      const auto& v = m2.element(j).vec;
      std::vector<Rational> image(new_dim, Rational(0));
      for (std::size_t l = 0; l < d2; ++l) {
        Rational coord = 0;
        for (std::size_t c = 0; c < d2; ++c) coord += inv[l][c] * v[c];
        if (sgn(coord) == 0) continue;
        for (std::size_t x = 0; x < new_dim; ++x) {
          if (sgn(targets[l][x]) != 0) image[x] += coord * targets[l][x];
        }
      }
      elements.push_back({result.right[m2.id(j)], std::move(image), m2.is_colored(j)});
    }
  } else {
    for (std::size_t j : m2_new) elements.push_back({result.right[m2.id(j)], {}, m2.is_colored(j)});
  }

  Backend backend = m1.backend();
  backend.ambient_dim = new_dim;
  result.structure = ColoredStructure(m1.alpha(), backend, std::move(elements));
  std::vector<std::size_t> base_image;
  for (std::size_t i : base1) base_image.push_back(result.structure.index_of(result.left[m1.id(i)]));
  result.base = make_set(std::move(base_image));
  return result;
}

bool verify_strong(const EmbeddingMap& f, const ColoredStructure& from, const ColoredStructure& to) {
  if (!is_lp_embedding(f, from, to)) return false;
  return is_closed(image_of(f, to), to).closed;
}

bool verify_free(const ElementSet& part1, const ElementSet& part2, const ElementSet& base,
                 const ColoredStructure& n) {
  return set_intersection(part1, part2) == base &&
         dim_independent(n.geometry(), part1, part2, base);
}

std::vector<Check> verify_amalgam(const AmalgamResult& result, const ColoredStructure& m1,
                                  const ColoredStructure& m2) {
  const ColoredStructure& m = result.structure;
  std::vector<Check> checks;
  auto witness = k_plus_witness(m);
  checks.push_back({"in_k_plus", !witness.has_value(),
                    witness ? m.ids_of(*witness) : std::vector<std::string>{}, ""});
  if (witness) return checks;
  checks.push_back({"left_strong", verify_strong(result.left, m1, m), {}, ""});
  checks.push_back({"right_strong", verify_strong(result.right, m2, m), {}, ""});
  const ElementSet part1 = image_of(result.left, m);
  const ElementSet part2 = image_of(result.right, m);
  checks.push_back({"free_over_base", verify_free(part1, part2, result.base, m), {}, ""});
  const std::size_t r = rank(m.geometry(), m.all());
  const ElementSet base1 = set_intersection(part1, part2);
  const std::size_t r1 = rank(m1.geometry(), m1.all());
  const std::size_t r2 = rank(m2.geometry(), m2.all());
  const std::size_t r0 = rank(m.geometry(), result.base);
  checks.push_back({"rank_identity", r + r0 == r1 + r2 && base1 == result.base, {},
                    std::to_string(r) + " = " + std::to_string(r1) + " + " + std::to_string(r2) +
                        " - " + std::to_string(r0)});
  return checks;
}

}  // namespace bicolor
