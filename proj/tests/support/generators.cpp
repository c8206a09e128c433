#include "generators.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"
#include "bicolor/pregeom.hpp"
#include "oracles.hpp"

namespace bicolor::testing {

Alpha alpha_one() { return Alpha::rational(1, 1); }
Alpha alpha_half() { return Alpha::rational(1, 2); }
Alpha alpha_two_thirds() { return Alpha::rational(2, 3); }
Alpha alpha_inv_sqrt2() { return Alpha::quadratic(0, 1, 2, 2); }

const std::vector<Alpha>& sample_alphas() {
  static const std::vector<Alpha> alphas{alpha_one(), alpha_half(), alpha_two_thirds(),
                                         alpha_inv_sqrt2()};
  return alphas;
}

std::string element_id(std::size_t i) {
  return std::string(1, static_cast<char>('e' + i / 10)) + std::to_string(i % 10);
}

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

ColoredStructure random_structure(Rng& rng, const Alpha& alpha, const Shape& shape) {
  const std::size_t dim = pick(rng, shape.min_dim, shape.max_dim);
  const std::size_t count = pick(rng, shape.min_elements, shape.max_elements);
  std::uniform_int_distribution<int> entry(-shape.max_entry, shape.max_entry);
  std::set<std::vector<Rational>> seen;
  std::vector<GroundElement> elements;
  std::size_t attempts = 0;
  while (elements.size() < count && attempts++ < 50 * count) {
    std::vector<Rational> v(dim, Rational(0));
    bool zero = true;
    for (auto& x : v) {
      if (coin(rng, shape.sparse_rate)) continue;
      x = entry(rng);
      zero = zero && sgn(x) == 0;
    }
    // Reusing an earlier direction makes parallel points common.
    if (!elements.empty() && coin(rng, 0.15)) {
      const auto& base = elements[pick(rng, 0, elements.size() - 1)].vec;
      const int scale = coin(rng, 0.5) ? 2 : -1;
      for (std::size_t i = 0; i < dim; ++i) v[i] = base[i] * scale;
      zero = false;
    }
    if (zero || !seen.insert(v).second) continue;
    elements.push_back({element_id(elements.size()), std::move(v), coin(rng, shape.color_rate)});
  }
  return ColoredStructure(alpha, Backend::linear(dim), std::move(elements));
}

ColoredStructure random_k_plus(Rng& rng, const Alpha& alpha, const Shape& shape) {
  ColoredStructure s = random_structure(rng, alpha, shape);
  while (true) {
    std::optional<ElementSet> witness;
    if (s.size() <= 12) {
      const DeltaTable table(s);
      for (std::uint64_t mask = 1; mask <= table.full(); ++mask) {
        if (sign(table[mask], alpha) < 0) {
          witness = mask_to_set(mask);
          break;
        }
      }
    } else {
      witness = k_plus_witness(s);
    }
    if (!witness) return s;
    std::vector<GroundElement> elements = s.elements();
    for (std::size_t i : *witness) {
      if (elements[i].colored) {
        elements[i].colored = false;
        break;
      }
    }
    s = ColoredStructure(alpha, s.backend(), std::move(elements));
  }
}

namespace {

// Uncolors one colored point of `witness` outside `keep`.
std::vector<GroundElement> uncolor_one(const ColoredStructure& s, const ElementSet& witness, const ElementSet& keep) {
  std::vector<GroundElement> elements = s.elements();
  for (std::size_t i : witness) {
    if (elements[i].colored && !set_contains(keep, i)) {
      elements[i].colored = false;
      return elements;
    }
  }
  check_invariant(false, "negative witness without a removable color");
  return elements;
}

}  // namespace

AmalgamCase random_amalgam_case(Rng& rng, const Alpha& alpha) {
  AmalgamCase out;
  out.m1 = random_k_plus(rng, alpha, {.min_elements = 2, .max_elements = 6, .max_dim = 4, .color_rate = 0.6});
  const ColoredStructure& m1 = out.m1;
  ElementSet base = random_subset(rng, m1.size(), 0.35);
  while (true) {
    ElementSet next = acl_in(m1.geometry(), closure(base, m1).closure, m1.all());
    if (next == base) break;
    base = std::move(next);
  }
  out.base = m1.ids_of(base);

  const std::size_t d1 = m1.backend().ambient_dim;
  const std::size_t d2 = d1 + pick(rng, 1, 2);
  // Unimodular upper triangular change of coordinates.
  std::vector<std::vector<long>> t(d2, std::vector<long>(d2, 0));
  for (std::size_t r = 0; r < d2; ++r) {
    t[r][r] = 1;
    for (std::size_t c = r + 1; c < d2; ++c) t[r][c] = std::uniform_int_distribution<long>(-1, 1)(rng);
  }
  auto transform = [&](const std::vector<Rational>& v) {
    std::vector<Rational> w(d2, Rational(0));
    for (std::size_t r = 0; r < d2; ++r) {
      for (std::size_t c = 0; c < v.size(); ++c) w[r] += t[r][c] * v[c];
    }
    return w;
  };
  std::vector<GroundElement> elements;
  std::set<std::vector<Rational>> seen{std::vector<Rational>(d2, Rational(0))};
  for (std::size_t i : base) {
    GroundElement e{"y" + m1.id(i), transform(m1.element(i).vec), m1.is_colored(i)};
    out.match[m1.id(i)] = e.id;
    seen.insert(e.vec);
    elements.push_back(std::move(e));
  }
  const std::size_t extra = pick(rng, 1, 3);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (std::size_t tries = 0, added = 0; added < extra && tries < 50; ++tries) {
    std::vector<Rational> v(d2, Rational(0));
    for (auto& x : v) x = entry(rng);
    if (!seen.insert(v).second) continue;
    std::vector<GroundElement> trial = elements;
    trial.push_back({"z" + std::to_string(added), v, coin(rng, 0.6)});
    ColoredStructure probe(alpha, Backend::linear(d2), trial);
    ElementSet old;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      if (probe.id(i)[0] == 'y') old.push_back(i);
    }
    // New points must stay off span(M0) so the base remains span-closed.
    if (acl_in(probe.geometry(), old, probe.all()).size() != old.size()) continue;
    elements = std::move(trial);
    ++added;
  }
  ColoredStructure m2(alpha, Backend::linear(d2), elements);
  auto base_in_m2 = [&](const ColoredStructure& s) {
    std::vector<std::string> ids;
    for (const auto& [from, to] : out.match) ids.push_back(to);
    return s.set_of(ids);
  };
  while (true) {
    const ElementSet b2 = base_in_m2(m2);
    if (auto w = k_plus_witness(m2)) {
      m2 = ColoredStructure(alpha, m2.backend(), uncolor_one(m2, *w, b2));
      continue;
    }
    const auto report = is_closed(b2, m2);
    if (report.closed) break;
    m2 = ColoredStructure(alpha, m2.backend(), uncolor_one(m2, report.witness, b2));
  }
  out.m2 = std::move(m2);
  return out;
}

ColoredStructure make_structure(const Alpha& alpha, std::size_t dim, const std::vector<PointSpec>& points) {
  std::vector<GroundElement> elements;
  for (const auto& p : points) {
    std::vector<Rational> v;
    for (long x : p.vec) v.emplace_back(x);
    v.resize(dim, Rational(0));
    elements.push_back({p.id, std::move(v), p.colored});
  }
  return ColoredStructure(alpha, Backend::linear(dim), std::move(elements));
}

ColoredStructure make_free(const Alpha& alpha, const std::vector<std::pair<std::string, bool>>& points) {
  std::vector<GroundElement> elements;
  for (const auto& [id, colored] : points) elements.push_back({id, {}, colored});
  return ColoredStructure(alpha, Backend::free(), std::move(elements));
}

ColoredStructure witness_structure() {
  return make_structure(alpha_two_thirds(), 2, {{"a", {1, 0}, false}, {"b1", {0, 1}, true}, {"b2", {1, 1}, true}});
}

ElementSet random_subset(Rng& rng, const ElementSet& from, double keep) {
  ElementSet out;
  for (std::size_t x : from) {
    if (coin(rng, keep)) out.push_back(x);
  }
  return out;
}

ElementSet random_subset(Rng& rng, std::size_t n, double keep) {
  return random_subset(rng, iota_set(n), keep);
}

ElementSet mask_to_set(std::uint64_t mask) {
  ElementSet out;
  while (mask) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t set_to_mask(const ElementSet& set) {
  std::uint64_t mask = 0;
  for (std::size_t i : set) mask |= std::uint64_t{1} << i;
  return mask;
}

}  // namespace bicolor::testing
