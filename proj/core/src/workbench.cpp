#include "bicolor/workbench.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "bicolor/amalgam.hpp"
#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"

namespace bicolor {
namespace {

// Closedness of id sets in a structure that only grows by strong
// extensions: X <= S stays true in any S' with S <= S', and a violating
// witness stays a witness, so answers survive across builder steps.
class ClosedCache {
 public:
  bool closed(const ColoredStructure& s, const ElementSet& x) {
    std::vector<std::string> key = s.ids_of(x);
    auto it = known_.find(key);
    if (it != known_.end()) return it->second;
    const bool answer = is_closed(x, s).closed;
    known_.emplace(std::move(key), answer);
    return answer;
  }

 private:
  std::map<std::vector<std::string>, bool> known_;
};

using Visit = std::function<bool(const std::vector<std::size_t>& images)>;

// Depth-first search for L_p-embeddings of `src` into `t` that send
// src_fixed[i] to img_fixed[i]; the remaining points of `order` are
// assigned in turn, candidates in id order. visit() sees the images of
// src_fixed followed by those of `order`, and returns true to stop.
bool search_maps(const ColoredStructure& src, const std::vector<std::size_t>& src_fixed,
                 const std::vector<std::size_t>& img_fixed, const std::vector<std::size_t>& order,
                 const ColoredStructure& t, const Visit& visit) {
  std::vector<std::size_t> xs = src_fixed;
  std::vector<std::size_t> ys = img_fixed;
  std::vector<char> used(t.size(), 0);
  for (std::size_t y : ys) used[y] = 1;
  std::function<bool(std::size_t)> dfs = [&](std::size_t depth) -> bool {
    if (depth == order.size()) return visit(ys);
    const std::size_t x = order[depth];
    xs.push_back(x);
    for (std::size_t y = 0; y < t.size(); ++y) {
      if (used[y] || t.is_colored(y) != src.is_colored(x)) continue;
      ys.push_back(y);
      if (same_linear_relations(src, xs, t, ys)) {
        used[y] = 1;
        const bool stop = dfs(depth + 1);
        used[y] = 0;
        if (stop) {
          ys.pop_back();
          xs.pop_back();
          return true;
        }
      }
      ys.pop_back();
    }
    xs.pop_back();
    return false;
  };
  return dfs(0);
}

EmbeddingMap as_map(const ColoredStructure& src, const std::vector<std::size_t>& xs,
                    const ColoredStructure& t, const std::vector<std::size_t>& ys) {
  EmbeddingMap m;
  for (std::size_t i = 0; i < xs.size(); ++i) m[src.id(xs[i])] = t.id(ys[i]);
  return m;
}

std::vector<EmbeddingMap> strong_embeddings_cached(const ColoredStructure& a, const ColoredStructure& s,
                                                   std::size_t cap, ClosedCache& cache) {
  std::vector<EmbeddingMap> out;
  if (cap == 0) return out;
  const std::vector<std::size_t> order = a.all();
  search_maps(a, {}, {}, order, s, [&](const std::vector<std::size_t>& ys) {
    if (cache.closed(s, make_set(ys))) out.push_back(as_map(a, order, s, ys));
    return out.size() >= cap;
  });
  return out;
}

std::optional<EmbeddingMap> find_extension_cached(const ExtensionTask& task, const EmbeddingMap& f,
                                                  const ColoredStructure& s, ClosedCache& cache) {
  const ColoredStructure& big = task.big;
  std::vector<std::size_t> src_fixed, img_fixed;
  for (const auto& id : task.base) {
    auto it = f.find(id);
    require(it != f.end(), ErrorCode::kMatchInvalid, "embedding misses base point '" + id + "'");
    src_fixed.push_back(big.index_of(id));
    img_fixed.push_back(s.index_of(it->second));
  }
  const std::vector<std::size_t> order = set_minus(big.all(), make_set(src_fixed));
  std::vector<std::size_t> all_src = src_fixed;
  all_src.insert(all_src.end(), order.begin(), order.end());
  std::optional<EmbeddingMap> found;
  search_maps(big, src_fixed, img_fixed, order, s, [&](const std::vector<std::size_t>& ys) {
    if (!cache.closed(s, make_set(ys))) return false;
    found = as_map(big, all_src, s, ys);
    return true;
  });
  return found;
}

std::string alpha_kind(const Alpha& alpha) { return alpha.is_rational() ? "rational" : "quadratic"; }

// Coefficients c with sum c_j basis_j = target, if target is in the span.
std::optional<std::vector<Rational>> coefficients(const std::vector<std::vector<Rational>>& basis,
                                                  const std::vector<Rational>& target) {
  const std::size_t k = basis.size();
  const std::size_t rows = target.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r][c] = basis[c][r];
    m[r][k] = target[r];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational lead = m[row][col];
    for (auto& x : m[row]) x /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c <= k; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (sgn(m[r][k]) != 0) return std::nullopt;
  }
  std::vector<Rational> out(k, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out[pivots[i]] = m[i][k];
  return out;
}

std::vector<Rational> combine(const std::vector<Rational>& coeffs, const std::vector<std::vector<Rational>>& vecs,
                              std::size_t dim) {
  std::vector<Rational> out(dim, Rational(0));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (sgn(coeffs[j]) == 0) continue;
    for (std::size_t c = 0; c < dim; ++c) out[c] += coeffs[j] * vecs[j][c];
  }
  return out;
}

// Realizes task.big over f inside a strong extension of S. Points of B in
// span(A) are matched with (or added as) plain points of S; the rest of B
// is freely amalgamated over the span trace of f(A).
ColoredStructure extend_by_task(const ColoredStructure& s, const ExtensionTask& task, const EmbeddingMap& f,
                                std::size_t step, EmbeddingMap& extension) {
  const ColoredStructure& big = task.big;
  const ElementSet a = big.set_of(task.base);
  const bool linear = s.backend().kind == BackendKind::kLinear;
  std::set<std::string> taken;
  for (const auto& e : s.elements()) taken.insert(e.id);
  auto fresh = [&](const std::string& id) {
    std::string candidate = "g" + std::to_string(step) + "." + id;
    while (taken.count(candidate)) candidate += "_";
    taken.insert(candidate);
    return candidate;
  };

  for (const auto& [from, to] : f) extension[from] = to;
  std::vector<std::vector<Rational>> basis_big, basis_s;
  if (linear) {
    EchelonSpan span;
    for (std::size_t i : a) {
      if (!span.push(big.geometry().vector(i))) continue;
      basis_big.push_back(big.element(i).vec);
      basis_s.push_back(s.element(s.index_of(f.at(big.id(i)))).vec);
    }
  }
  // The algebraic layer of B.
  const ElementSet layer = acl_in(big.geometry(), a, big.all());
  std::vector<GroundElement> added;
  for (std::size_t b : set_minus(layer, a)) {
    auto c = coefficients(basis_big, big.element(b).vec);
    check_invariant(c.has_value(), "algebraic point outside the span of its base");
    std::vector<Rational> v = combine(*c, basis_s, s.backend().ambient_dim);
    if (auto hit = s.find_vector(v)) {
      check_invariant(!s.is_colored(*hit), "colored point in the span of a closed set");
      extension[big.id(b)] = s.id(*hit);
    } else {
      const std::string id = fresh(big.id(b));
      added.push_back({id, std::move(v), false});
      extension[big.id(b)] = id;
    }
  }
  const ColoredStructure s1 = added.empty() ? s : s.extended(std::move(added), s.backend().ambient_dim);

  std::vector<std::string> image_ids;
  for (std::size_t i : layer) image_ids.push_back(extension.at(big.id(i)));
  const ElementSet trace = acl_in(s1.geometry(), s1.set_of(image_ids), s1.all());

  // B' = B with its algebraic layer renamed into S, plus the pullbacks of
  // the rest of the trace, so that the trace is span-closed on both sides.
  std::vector<GroundElement> side;
  std::set<std::string> covered;
  for (std::size_t i : layer) {
    side.push_back({extension.at(big.id(i)), big.element(i).vec, big.is_colored(i)});
    covered.insert(side.back().id);
  }
  for (std::size_t z : trace) {
    if (covered.count(s1.id(z))) continue;
    check_invariant(!s1.is_colored(z), "colored point in the span of a closed set");
    auto c = coefficients(basis_s, s1.element(z).vec);
    check_invariant(c.has_value(), "trace point outside the span of the base image");
    side.push_back({s1.id(z), combine(*c, basis_big, big.backend().ambient_dim), false});
  }
  std::map<std::string, std::string> renamed;
  for (std::size_t b = 0; b < big.size(); ++b) {
    if (set_contains(layer, b)) continue;
    renamed[big.id(b)] = fresh(big.id(b));
    side.push_back({renamed[big.id(b)], big.element(b).vec, big.is_colored(b)});
  }
  const ColoredStructure other(s.alpha(), big.backend(), std::move(side));
  const std::vector<std::string> base = s1.ids_of(trace);
  EmbeddingMap match;
  for (const auto& id : base) match[id] = id;
  AmalgamResult amalgam = free_amalgam(s1, other, base, match);
  for (const auto& [orig, id] : renamed) extension[orig] = amalgam.right.at(id);
  require(amalgam.structure.backend().ambient_dim <= kMaxBuilderAmbient, ErrorCode::kBudgetExceeded,
          "builder ambient dimension exceeds " + std::to_string(kMaxBuilderAmbient));
  return std::move(amalgam.structure);
}

std::string embedding_key(const std::string& task, const EmbeddingMap& f) {
  std::string key = task;
  for (const auto& [from, to] : f) key += "|" + from + "=" + to;
  return key;
}

Json map_to_json(const EmbeddingMap& m) {
  Json out = Json::object();
  for (const auto& [from, to] : m) out[from] = to;
  return out;
}

}  // namespace

bool TaskOutcome::pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const EmbeddingOutcome& o) { return o.extended; });
}

Json audit_to_json(const AuditReport& report) {
  Json tasks = Json::array();
  for (const auto& t : report.tasks) {
    Json outcomes = Json::array();
    for (const auto& o : t.outcomes) {
      Json item = {{"embedding", map_to_json(o.embedding)}, {"extended", o.extended}};
      if (o.extended) item["extension"] = map_to_json(o.extension);
      outcomes.push_back(std::move(item));
    }
    tasks.push_back({{"task", t.task},
                     {"kind", t.kind},
                     {"embeddingsTried", t.embeddings_tried},
                     {"capped", t.capped},
                     {"pass", t.pass()},
                     {"outcomes", std::move(outcomes)}});
  }
  return {{"audit", report.audit},
          {"catalogVersion", report.catalog_version},
          {"embeddingCap", report.cap},
          {"alphaKind", report.alpha_kind},
          {"pass", report.pass},
          {"tasks", std::move(tasks)}};
}

std::vector<EmbeddingMap> strong_embeddings(const ColoredStructure& a, const ColoredStructure& s,
                                            std::size_t cap) {
  require_k_plus(s, "strong_embeddings");
  ClosedCache cache;
  return strong_embeddings_cached(a, s, cap, cache);
}

std::optional<EmbeddingMap> find_strong_extension(const ExtensionTask& task, const EmbeddingMap& f,
                                                  const ColoredStructure& s) {
  require_k_plus(s, "find_strong_extension");
  ClosedCache cache;
  return find_extension_cached(task, f, s, cache);
}

AuditReport audit_richness(const ColoredStructure& s, std::size_t size_budget) {
  require_k_plus(s, "audit_richness");
  AuditReport report;
  report.audit = "richness";
  report.alpha_kind = alpha_kind(s.alpha());
  ClosedCache cache;
  for (const auto& task : task_catalog(s.alpha(), size_budget, s.backend().kind)) {
    TaskOutcome outcome;
    outcome.task = task.name;
    outcome.kind = std::string(task_kind_name(task.kind));
    for (auto& f : strong_embeddings_cached(task.small, s, kEmbeddingCap, cache)) {
      EmbeddingOutcome o;
      auto g = find_extension_cached(task, f, s, cache);
      o.extended = g.has_value();
      if (g) o.extension = std::move(*g);
      o.embedding = std::move(f);
      outcome.outcomes.push_back(std::move(o));
    }
    outcome.embeddings_tried = outcome.outcomes.size();
    outcome.capped = outcome.embeddings_tried >= kEmbeddingCap;
    report.tasks.push_back(std::move(outcome));
  }
  report.pass = std::all_of(report.tasks.begin(), report.tasks.end(),
                            [](const TaskOutcome& t) { return t.pass(); });
  return report;
}

AuditReport audit_semi_generic(const ColoredStructure& s, const EmbeddingMap& f, const ColoredStructure& big,
                               std::size_t n, std::size_t cap) {
  require_k_plus(s, "audit_semi_generic");
  require_k_plus(big, "audit_semi_generic");
  std::vector<std::string> a_ids;
  for (const auto& [from, to] : f) a_ids.push_back(from);
  const ElementSet a = big.set_of(a_ids);
  require(is_closed_in(a, big.all(), big).closed, ErrorCode::kNotClosed, "A is not closed in B");
  require(acl_in(big.geometry(), a, big.all()) == a, ErrorCode::kNotTranscendental,
          "B is not transcendental over A");
  const ColoredStructure small = big.restrict(a);
  require(is_lp_embedding(f, small, s), ErrorCode::kMatchInvalid, "f is not an L_p-embedding");

  AuditReport report;
  report.audit = "semi-generic";
  report.alpha_kind = alpha_kind(s.alpha());
  report.cap = cap;
  TaskOutcome outcome;
  outcome.task = "semi-generic/n=" + std::to_string(n);
  outcome.kind = std::string(task_kind_name(classify_task(big, a)));
  EmbeddingOutcome result;
  result.embedding = f;

  std::vector<std::size_t> src_fixed, img_fixed;
  for (std::size_t i : a) {
    src_fixed.push_back(i);
    img_fixed.push_back(s.index_of(f.at(big.id(i))));
  }
  const ElementSet fa = make_set(img_fixed);
  const ElementSet cl_fa = closure_n(fa, s, n);
  const std::vector<std::size_t> order = set_minus(big.all(), a);
  std::vector<std::size_t> all_src = src_fixed;
  all_src.insert(all_src.end(), order.begin(), order.end());
  std::size_t tried = 0;
  search_maps(big, src_fixed, img_fixed, order, s, [&](const std::vector<std::size_t>& ys) {
    ++tried;
    const ElementSet image = make_set(ys);
    const bool ok = closure_n(image, s, n) == set_union(image, cl_fa) &&
                    verify_free(image, cl_fa, fa, s);
    if (ok) {
      result.extended = true;
      result.extension = as_map(big, all_src, s, ys);
    }
    return ok || tried >= cap;
  });
  outcome.embeddings_tried = tried;
  outcome.capped = !result.extended && tried >= cap;
  outcome.outcomes.push_back(std::move(result));
  report.tasks.push_back(std::move(outcome));
  report.pass = report.tasks.front().pass();
  return report;
}

BuildResult build_generic(const ColoredStructure& seed, std::size_t steps, std::size_t size_budget,
                          std::uint64_t rng_seed, BuildOptions options) {
  require_k_plus(seed, "build_generic");
  BuildResult result;
  result.structure = seed;
  const std::vector<ExtensionTask> tasks = task_catalog(seed.alpha(), size_budget, seed.backend().kind);
  if (tasks.empty() || steps == 0) {
    result.saturated = tasks.empty();
    return result;
  }
  std::vector<std::size_t> order(tasks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(rng_seed);
  std::shuffle(order.begin(), order.end(), rng);

  ClosedCache cache;
  std::set<std::string> extended;
  std::size_t cursor = 0;
  while (result.steps_taken < steps) {
    bool repaired = false;
    for (std::size_t t = 0; t < tasks.size() && !repaired; ++t) {
      const ExtensionTask& task = tasks[order[(cursor + t) % tasks.size()]];
      for (const auto& f : strong_embeddings_cached(task.small, result.structure, kEmbeddingCap, cache)) {
        const std::string key = embedding_key(task.name, f);
        if (extended.count(key)) continue;
        if (find_extension_cached(task, f, result.structure, cache)) {
          extended.insert(key);
          continue;
        }
        EmbeddingMap g;
        result.structure = extend_by_task(result.structure, task, f, result.steps_taken + 1, g);
        if (options.verify_each_step) {
          check_invariant(in_k_plus(result.structure), "builder left the class");
        }
        extended.insert(key);
        result.log.push_back(task.name);
        ++result.steps_taken;
        cursor = (cursor + t + 1) % tasks.size();
        repaired = true;
        break;
      }
    }
    if (!repaired) {
      result.saturated = true;
      break;
    }
  }
  return result;
}

}  // namespace bicolor
