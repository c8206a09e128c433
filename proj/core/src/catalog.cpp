#include "bicolor/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/construct.hpp"
#include "bicolor/error.hpp"

namespace bicolor {
namespace {

std::vector<Rational> unit(std::size_t dim, std::size_t i, long scale = 1) {
  std::vector<Rational> v(dim, Rational(0));
  v[i] = scale;
  return v;
}

struct Base {
  std::string name;  // one letter per point: p plain, c colored
  std::vector<GroundElement> points;
};

// Independent bases on the first coordinates, colored points last.
std::vector<Base> bases(std::size_t max_size, std::size_t dim, BackendKind backend) {
  std::vector<Base> out;
  for (std::size_t m = 0; m <= max_size; ++m) {
    for (std::size_t colored = 0; colored <= m; ++colored) {
      Base b;
      b.name = m == 0 ? "empty" : std::string(m - colored, 'p') + std::string(colored, 'c');
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> v = backend == BackendKind::kLinear ? unit(dim, i) : std::vector<Rational>{};
        b.points.push_back({"a" + std::to_string(i + 1), std::move(v), i >= m - colored});
      }
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<std::string> base_ids(const Base& b) {
  std::vector<std::string> ids;
  for (const auto& p : b.points) ids.push_back(p.id);
  return ids;
}

}  // namespace

std::string_view task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::kAlgebraic: return "algebraic";
    case TaskKind::kTranscendental: return "transcendental";
    case TaskKind::kMixed: return "mixed";
  }
  return "unknown";
}

TaskKind classify_task(const ColoredStructure& big, const ElementSet& base, ElementSet* split) {
  const ElementSet layer = acl_in(big.geometry(), base, big.all());
  if (split) *split = layer;
  const std::size_t algebraic = layer.size() - base.size();
  const std::size_t added = big.size() - base.size();
  if (algebraic == added) return TaskKind::kAlgebraic;
  if (algebraic == 0) return TaskKind::kTranscendental;
  return TaskKind::kMixed;
}

std::vector<int> task_signature(const ColoredStructure& big, const ElementSet& base) {
  const std::size_t n = big.size();
  const std::size_t masks = std::size_t{1} << n;
  std::vector<int> ranks(masks);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    ElementSet set;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) set.push_back(i);
    }
    ranks[mask] = static_cast<int>(rank(big.geometry(), set));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> sig;
    sig.reserve(n + masks);
    for (std::size_t i = 0; i < n; ++i) {
      sig.push_back(2 * set_contains(base, perm[i]) + big.is_colored(perm[i]));
    }
    for (std::size_t mask = 0; mask < masks; ++mask) {
      std::size_t image = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) image |= std::size_t{1} << perm[i];
      }
      sig.push_back(ranks[image]);
    }
    if (best.empty() || sig < best) best = std::move(sig);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<ExtensionTask> task_catalog(const Alpha& alpha, std::size_t size_budget, BackendKind backend) {
  require(size_budget <= kMaxCatalogBudget, ErrorCode::kBudgetExceeded,
          "catalog budget " + std::to_string(size_budget) + " exceeds " +
              std::to_string(kMaxCatalogBudget));
  std::vector<ExtensionTask> out;
  if (size_budget == 0) return out;
  const bool linear = backend == BackendKind::kLinear;
  const std::size_t dim = linear ? size_budget : 0;
  const Backend bk = linear ? Backend::linear(dim) : Backend::free();
  std::map<std::vector<int>, std::string> seen;

  auto add = [&](const std::string& name, const Base& base, std::vector<GroundElement> extra) {
    std::vector<GroundElement> all = base.points;
    for (auto& e : extra) all.push_back(std::move(e));
    ColoredStructure big(alpha, bk, std::move(all));
    if (!in_k_plus(big)) return;
    const ElementSet a = big.set_of(base_ids(base));
    if (!is_closed(a, big).closed) return;
    auto sig = task_signature(big, a);
    if (!seen.emplace(std::move(sig), name).second) return;
    ExtensionTask t;
    t.name = name + "@" + base.name;
    t.small = big.restrict(a);
    t.base = base_ids(base);
    ElementSet layer;
    t.kind = classify_task(big, a, &layer);
    if (t.kind == TaskKind::kMixed) t.split = big.ids_of(layer);
    t.big = std::move(big);
    out.push_back(std::move(t));
  };
  auto fresh_point = [&](std::size_t m, long scale) {
    return linear ? unit(dim, m, scale) : std::vector<Rational>{};
  };

  for (const Base& base : bases(size_budget - 1, dim, backend)) {
    const std::size_t m = base.points.size();
    // Single new points.
    add("plain-point", base, {{"b1", fresh_point(m, 1), false}});
    add("colored-point", base, {{"b1", fresh_point(m, 1), true}});
    if (!linear) continue;
    if (m >= 1) {
      std::vector<Rational> v = m == 1 ? unit(dim, 0, 2) : std::vector<Rational>(dim, Rational(0));
      for (std::size_t i = 0; m >= 2 && i < m; ++i) v[i] = 1;
      add("algebraic-point", base, {{"b1", std::move(v), false}});
    }
    if (m + 2 <= size_budget) {
      for (int colored = 0; colored <= 2; ++colored) {
        const std::string tag = colored == 0 ? "pp" : colored == 1 ? "pc" : "cc";
        add("parallel-pair-" + tag, base,
            {{"b1", fresh_point(m, 1), colored >= 2}, {"b2", fresh_point(m, 2), colored >= 1}});
      }
    }
  }
  if (!linear) return out;

  // Patches over B = A + one plain point, as long as they fit the budget.
  const bool rational_patch = alpha.is_rational() && alpha.num() != alpha.den();
  for (const Base& base : bases(size_budget - 1, dim, backend)) {
    const std::size_t m = base.points.size();
    if (m + 2 > size_budget) continue;
    ApproximationPair pair;
    if (rational_patch) {
      pair = rational_pair(alpha, 0);
    } else if (!alpha.is_rational() && compare(ExactValue::of(Rational(1, 4)), ExactValue::alpha(), alpha) < 0) {
      pair = dirichlet_window(alpha, Rational(1, 4));
    } else {
      continue;
    }
    if (m + 1 + pair.k > size_budget || m + 1 + pair.s > size_budget) continue;
    std::vector<GroundElement> points = base.points;
    for (auto& p : points) p.vec.resize(m + 1);
    points.push_back({"b1", unit(m + 1, m), false});
    ColoredStructure host(alpha, Backend::linear(m + 1), std::move(points));
    const ElementSet a = host.set_of(base_ids(base));
    PatchResult patch = rational_patch ? rational_minimal_extension(a, host.all(), 0, host)
                                       : transcendental_patch(a, host.all(), Rational(1, 4), host);
    std::vector<GroundElement> extra;
    for (const auto& e : patch.structure.elements()) {
      if (host.find(e.id) && e.id != "b1") continue;
      GroundElement g = e;
      g.vec.resize(dim, Rational(0));
      extra.push_back(std::move(g));
    }
    Base padded = base;
    for (auto& p : padded.points) p.vec.resize(dim, Rational(0));
    add(rational_patch ? "minimal-pair-patch" : "dirichlet-patch", padded, std::move(extra));
  }
  return out;
}

}  // namespace bicolor
