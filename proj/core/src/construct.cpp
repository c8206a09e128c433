#include "bicolor/construct.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"

namespace bicolor {
namespace {

constexpr std::size_t kExhaustivePatchSize = 12;
constexpr std::size_t kExhaustiveUnionSize = 14;
constexpr std::size_t kSamples = 10'000;
constexpr std::uint64_t kSampleSeed = 0x5eed'0f'd1ceULL;
constexpr int kPlacementAttempts = 4;

void check_indices(const ElementSet& a, const ColoredStructure& s) {
  for (std::size_t i : a) {
    require(i < s.size(), ErrorCode::kUnknownElement, "element index " + std::to_string(i));
  }
}

std::vector<std::size_t> greedy_basis(const ColoredStructure& s, const ElementSet& b) {
  EchelonSpan span;
  std::vector<std::size_t> out;
  for (std::size_t i : b) {
    if (span.push(s.geometry().vector(i))) out.push_back(i);
  }
  return out;
}

std::vector<Rational> padded(std::vector<Rational> v, std::size_t dim) {
  v.resize(dim, Rational(0));
  return v;
}

// Axes of a patch: `fresh` new unit vectors starting at coordinate `first`,
// followed by a basis of span(B). Points on the moment curve over these axes
// are in general position over B and keep a component in span(B), so that
// small parts of the patch stay independent of B's subsets.
struct PatchAxes {
  std::vector<std::vector<Rational>> axes;
  std::size_t dim = 0;
};

PatchAxes patch_axes(std::size_t first, std::size_t fresh,
                     const std::vector<std::vector<Rational>>& span_basis) {
  PatchAxes p;
  p.dim = first + fresh;
  for (std::size_t i = 0; i < fresh; ++i) {
    std::vector<Rational> u(p.dim, Rational(0));
    u[first + i] = 1;
    p.axes.push_back(std::move(u));
  }
  for (const auto& v : span_basis) p.axes.push_back(padded(v, p.dim));
  return p;
}

std::vector<Rational> moment_point(unsigned long lambda, const PatchAxes& axes) {
  std::vector<Rational> out(axes.dim, Rational(0));
  BigInt power = 1;
  for (const auto& axis : axes.axes) {
    for (std::size_t c = 0; c < axes.dim; ++c) {
      if (sgn(axis[c]) != 0) out[c] += Rational(power) * axis[c];
    }
    power *= lambda;
  }
  return out;
}

std::size_t to_size(const BigInt& x) {
  require(x.fits_ulong_p() && x < 100000, ErrorCode::kBudgetExceeded,
          "patch size " + x.get_str() + " is beyond desk scale");
  return x.get_ui();
}

// Works on the substructure B of S; new points get fresh coordinates.
struct Workspace {
  ColoredStructure structure;
  ElementSet a;  // indices in structure
  ElementSet b;
  std::vector<std::vector<Rational>> span_basis;
};

Workspace workspace_on(const ElementSet& a, const ElementSet& b, const ColoredStructure& s) {
  Workspace w;
  w.structure = s.restrict(b);
  std::vector<std::size_t> a_idx;
  for (std::size_t i : a) a_idx.push_back(w.structure.index_of(s.id(i)));
  w.a = make_set(std::move(a_idx));
  w.b = w.structure.all();
  for (std::size_t i : greedy_basis(w.structure, w.b)) w.span_basis.push_back(w.structure.element(i).vec);
  return w;
}

// Adds `copies` patches of k colored points with s fresh coordinates each.
ColoredStructure add_patches(const Workspace& w, std::size_t fresh, std::size_t k,
                             std::size_t copies, unsigned long offset,
                             std::vector<std::string>& added) {
  ColoredStructure current = w.structure;
  for (std::size_t c = 0; c < copies; ++c) {
    const std::size_t first = current.backend().ambient_dim;
    PatchAxes axes = patch_axes(first, fresh, w.span_basis);
    auto ids = fresh_ids(current, "d", k);
    std::vector<GroundElement> extra;
    for (std::size_t j = 0; j < k; ++j) {
      extra.push_back({ids[j], moment_point(offset + j + 1, axes), true});
    }
    added.insert(added.end(), ids.begin(), ids.end());
    current = current.extended(std::move(extra), axes.dim);
  }
  return current;
}

// delta(C / base) >= 0 for every C inside `extra` (proper parts only when
// `proper_only`). Exhaustive up to `limit` points, sampled beyond.
bool nonnegative_parts(const ColoredStructure& s, const ElementSet& base, const ElementSet& extra,
                       bool proper_only, std::size_t limit, bool& exhaustive) {
  const Alpha& alpha = s.alpha();
  if (extra.size() <= limit) {
    EchelonSpan span = span_of(s.geometry(), base);
    const std::size_t base_rank = span.rank();
    std::int64_t colors = 0;
    std::size_t size = 0;
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
      if (i == extra.size()) {
        if (proper_only && size == extra.size()) return true;
        return alpha.sign(static_cast<std::int64_t>(span.rank() - base_rank), colors) >= 0;
      }
      if (!dfs(i + 1)) return false;
      span.push(s.geometry().vector(extra[i]));
      ++size;
      colors += s.is_colored(extra[i]);
      bool ok = dfs(i + 1);
      colors -= s.is_colored(extra[i]);
      --size;
      span.pop();
      return ok;
    };
    return dfs(0);
  }
  exhaustive = false;
  std::mt19937_64 rng(kSampleSeed);
  std::uniform_real_distribution<double> density(0.05, 0.95);
  for (std::size_t round = 0; round < kSamples; ++round) {
    std::bernoulli_distribution keep(density(rng));
    ElementSet part;
    for (std::size_t x : extra) {
      if (keep(rng)) part.push_back(x);
    }
    if (proper_only && part.size() == extra.size()) part.pop_back();
    if (sign(delta(s, part, base), alpha) < 0) return false;
  }
  return true;
}

// Every point of D \ A is outside span(A).
bool transcendental_over(const ColoredStructure& s, const ElementSet& a, const ElementSet& d) {
  EchelonSpan span = span_of(s.geometry(), a);
  for (std::size_t x : set_minus(d, a)) {
    if (span.contains(s.geometry().vector(x))) return false;
  }
  return true;
}

// Shared preconditions of the patch constructions; returns delta(B/A).
PreDimValue patch_preconditions(const ElementSet& a, const ElementSet& b, const ColoredStructure& s,
                                const char* op) {
  check_indices(b, s);
  require(is_subset(a, b), ErrorCode::kNotInAmbient, std::string(op) + ": A is not inside B");
  require_k_plus(s, op);
  require(is_closed_in(a, b, s).closed, ErrorCode::kNotClosed, std::string(op) + ": A is not closed in B");
  require(transcendental_over(s, a, b), ErrorCode::kNotTranscendental,
          std::string(op) + ": B is not transcendental over A");
  return delta(s, b, a);
}

ElementSet indices_of(const ColoredStructure& s, const std::vector<std::string>& ids) {
  return s.set_of(ids);
}

// A <= D on the final structure, exactly when small, otherwise by sampling.
bool closed_check(const ColoredStructure& d, const ElementSet& a, const ElementSet& b,
                  std::size_t limit, bool& exhaustive) {
  if (d.size() - b.size() <= limit) return is_closed_in(a, d.all(), d).closed;
  return nonnegative_parts(d, a, set_minus(d.all(), a), false, 0, exhaustive);
}

}  // namespace

Extension generic_basis_extension(const ElementSet& a, const ElementSet& b, std::size_t n,
                                  const ColoredStructure& s) {
  require(s.backend().kind == BackendKind::kLinear, ErrorCode::kFreeBackendUnsupported,
          "generic_basis_extension needs a linear pregeometry");
  check_indices(a, s);
  check_indices(b, s);
  require(rel_rank(s.geometry(), b, a) == b.size() && set_intersection(a, b).empty(),
          ErrorCode::kNotIndependent, "B is not independent over A");
  const std::size_t dim = s.backend().ambient_dim;
  Extension ext;
  ext.added = fresh_ids(s, "g", n);
  // Distinct lambdas give a Vandermonde system, so any |B| of the points are
  // a basis over A. Lambdas whose point repeats a payload are skipped.
  std::set<std::vector<Rational>> taken;
  for (const auto& e : s.elements()) taken.insert(e.vec);
  std::vector<GroundElement> extra;
  unsigned long lambda = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> v;
    do {
      ++lambda;
      v.assign(dim, Rational(0));
      // A single point of B gets weight lambda + 1, else the i-th gets lambda^i.
      BigInt power = b.size() == 1 ? BigInt(lambda + 1) : BigInt(1);
      for (std::size_t i : b) {
        for (std::size_t c = 0; c < dim; ++c) v[c] += Rational(power) * s.element(i).vec[c];
        power *= lambda;
      }
    } while (!taken.insert(v).second);
    extra.push_back({ext.added[j], std::move(v), false});
  }
  ext.structure = s.extended(std::move(extra), dim);
  const ColoredStructure& out = ext.structure;
  // Every |B|-subset of B u D is a basis over A, via the dense route.
  std::vector<std::size_t> pool;
  for (std::size_t i : b) pool.push_back(out.index_of(s.id(i)));
  for (const auto& id : ext.added) pool.push_back(out.index_of(id));
  ElementSet a_out;
  for (std::size_t i : a) a_out.push_back(out.index_of(s.id(i)));
  a_out = make_set(a_out);
  const std::size_t base_rank = bareiss_rank(out.geometry(), a_out);
  const std::size_t m = b.size();
  bool all_bases = true;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (!all_bases) return;
    if (pick.size() == m) {
      ElementSet chosen = make_set(pick);
      all_bases = bareiss_rank(out.geometry(), set_union(a_out, chosen)) == base_rank + m;
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      dfs(i + 1);
      pick.pop_back();
    }
  };
  dfs(0);
  ext.checks.push_back({"every_subset_is_basis", all_bases, {}, ""});
  check_invariant(all_bases, "moment curve points are not in general position");
  return ext;
}

RootedFamily delta_system_closed_root(const std::vector<ElementSet>& family, std::size_t n,
                                      const ColoredStructure& s) {
  require(!family.empty() && family.size() >= n, ErrorCode::kFamilyTooSmall,
          "family has fewer than n members");
  require_k_plus(s, "delta_system_closed_root");
  const std::size_t k = family.front().size();
  for (const auto& member : family) {
    check_indices(member, s);
    require(member.size() == k, ErrorCode::kInvalidInput, "family members differ in size");
  }
  RootedFamily best;
  bool found = false;
  best.discard_bound = 0;
  if (k >= 2) {
    const ExactValue eps = ExactValue::of(epsilon_bound(static_cast<int>(k), s.alpha()));
    // floor(k / eps) by exact comparison against successive integers.
    BigInt bound = 0;
    while (compare(eps.scaled(Rational(bound + 1)), ExactValue::of(Rational(static_cast<unsigned long>(k))),
                   s.alpha()) <= 0) {
      ++bound;
    }
    best.discard_bound = bound.get_ui();
  }
  // Candidate roots: all subsets of members, by size then lexicographically.
  std::vector<ElementSet> roots;
  for (const auto& member : family) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << member.size()); ++mask) {
      ElementSet r;
      for (std::size_t i = 0; i < member.size(); ++i) {
        if (mask >> i & 1) r.push_back(member[i]);
      }
      roots.push_back(std::move(r));
    }
  }
  std::sort(roots.begin(), roots.end(), [](const ElementSet& x, const ElementSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  for (const auto& root : roots) {
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (is_subset(root, family[i])) holders.push_back(i);
    }
    if (holders.size() < n) continue;
    // Largest subfamily with pairwise disjoint petals.
    std::vector<std::size_t> chosen, best_pack;
    ElementSet used;
    std::function<void(std::size_t)> pack = [&](std::size_t from) {
      if (chosen.size() > best_pack.size()) best_pack = chosen;
      if (chosen.size() + (holders.size() - from) <= best_pack.size()) return;
      for (std::size_t h = from; h < holders.size(); ++h) {
        ElementSet petal = set_minus(family[holders[h]], root);
        if (!set_intersection(petal, used).empty()) continue;
        ElementSet saved = used;
        used = set_union(used, petal);
        chosen.push_back(holders[h]);
        pack(h + 1);
        chosen.pop_back();
        used = std::move(saved);
      }
    };
    pack(0);
    if (best_pack.size() < n) continue;
    RootedFamily candidate;
    candidate.root = root;
    candidate.discard_bound = best.discard_bound;
    for (std::size_t i : best_pack) {
      if (is_closed_in(root, family[i], s).closed) {
        candidate.members.push_back(i);
      } else {
        ++candidate.discarded;
      }
    }
    if (candidate.members.size() < n) continue;
    if (!found || candidate.members.size() > best.members.size()) {
      best = std::move(candidate);
      found = true;
    }
  }
  require(found, ErrorCode::kFamilyTooSmall, "no closed root with enough members");
  return best;
}

PatchResult transcendental_patch(const ElementSet& a, const ElementSet& b, const Rational& epsilon,
                                 const ColoredStructure& s) {
  return transcendental_patch(a, b, ExactValue::of(epsilon), s);
}

PatchResult transcendental_patch(const ElementSet& a, const ElementSet& b,
                                 const ExactValue& epsilon, const ColoredStructure& s) {
  const Alpha& alpha = s.alpha();
  require(!alpha.is_rational(), ErrorCode::kRationalAlpha, "transcendental_patch needs irrational alpha");
  require(sign(epsilon, alpha) > 0 && compare(epsilon, ExactValue::alpha(), alpha) < 0,
          ErrorCode::kBadEpsilon, "epsilon must satisfy 0 < epsilon < alpha");
  const PreDimValue gap = patch_preconditions(a, b, s, "transcendental_patch");
  require(compare(ExactValue::of(gap), epsilon, alpha) > 0, ErrorCode::kGapTooSmall,
          "delta(B/A) must exceed epsilon");
  const ApproximationPair pair = dirichlet_window(alpha, epsilon);
  const std::size_t fresh = to_size(pair.s);
  const std::size_t k = to_size(pair.k);
  const Workspace w = workspace_on(a, b, s);

  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    PatchResult r;
    r.pair = pair;
    r.structure = add_patches(w, fresh, k, 1, static_cast<unsigned long>(attempt) * k, r.added);
    const ColoredStructure& d = r.structure;
    const ElementSet new_points = indices_of(d, r.added);
    const ElementSet bb = indices_of(d, s.ids_of(b));
    const ElementSet aa = indices_of(d, s.ids_of(a));
    r.value = ExactValue::of(delta(d, new_points, bb));
    const bool in_window = sign(r.value, alpha) < 0 && compare(r.value + epsilon, ExactValue{}, alpha) > 0;
    r.checks.push_back({"gap_in_window", in_window, {}, r.value.to_string()});
    r.checks.push_back({"proper_parts_nonnegative",
                        nonnegative_parts(d, bb, new_points, true, kExhaustivePatchSize, r.exhaustive),
                        {}, ""});
    r.checks.push_back({"a_closed_in_d", closed_check(d, aa, bb, kExhaustiveUnionSize, r.exhaustive), {}, ""});
    r.checks.push_back({"s_subsets_are_bases", rel_rank(d.geometry(), new_points, bb) == fresh, {}, ""});
    if (all_pass(r.checks)) return r;
  }
  fail(ErrorCode::kInternal, "transcendental_patch: placement failed verification");
}

PatchResult free_power_patch(const ElementSet& a, const ElementSet& b, const Rational& mu,
                             std::size_t n, const ColoredStructure& s) {
  const Alpha& alpha = s.alpha();
  require(!alpha.is_rational(), ErrorCode::kRationalAlpha, "free_power_patch needs irrational alpha");
  require(sgn(mu) > 0, ErrorCode::kBadEpsilon, "mu must be positive");
  require(n >= 1, ErrorCode::kInvalidInput, "n must be at least 1");
  const ExactValue gap = ExactValue::of(patch_preconditions(a, b, s, "free_power_patch"));
  require(sign(gap, alpha) > 0, ErrorCode::kGapTooSmall, "delta(B/A) must be positive");
  // Half of min{delta(B/A), eps_n / n, mu}; for n = 1 alpha stands in for
  // eps_n, since no small extension needs protecting.
  ExactValue small = n >= 2 ? ExactValue::of(epsilon_bound(static_cast<int>(n), alpha))
                                  .scaled(Rational(1, static_cast<unsigned long>(n)))
                            : ExactValue::alpha();
  ExactValue lambda = min_value(min_value(gap, small, alpha), ExactValue::of(mu), alpha).scaled(Rational(1, 2));
  const ApproximationPair pair = dirichlet_window(alpha, lambda);
  const std::size_t fresh = to_size(pair.s);
  const std::size_t k = to_size(pair.k);
  // gamma = k*alpha - s; copies c with c*gamma <= delta(B/A) < (c+1)*gamma.
  const ExactValue gamma{-pair.s, -pair.k, BigInt(1)};
  std::size_t copies = 0;
  while (compare(gamma.scaled(Rational(static_cast<unsigned long>(copies + 1))), gap, alpha) <= 0) {
    ++copies;
    require(copies < 10000, ErrorCode::kBudgetExceeded, "free_power_patch: too many copies");
  }
  const Workspace w = workspace_on(a, b, s);
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    PatchResult r;
    r.pair = pair;
    r.copies = copies;
    r.structure = add_patches(w, fresh, k, copies, static_cast<unsigned long>(attempt) * k, r.added);
    const ColoredStructure& d = r.structure;
    const ElementSet new_points = indices_of(d, r.added);
    const ElementSet bb = indices_of(d, s.ids_of(b));
    const ElementSet aa = indices_of(d, s.ids_of(a));
    r.value = ExactValue::of(delta(d, d.all(), aa));
    r.checks.push_back({"below_mu", sign(r.value, alpha) >= 0 &&
                                        compare(r.value, ExactValue::of(mu), alpha) < 0,
                        {}, r.value.to_string()});
    r.checks.push_back({"a_closed_in_union", closed_check(d, aa, bb, kExhaustiveUnionSize, r.exhaustive), {}, ""});
    // B <= C for |C \ B| < n: every part of fewer than n new points.
    bool small_ok = true;
    if (n >= 2) {
      std::vector<std::size_t> pick;
      std::uint64_t visited = 0;
      const bool enumerate = new_points.size() <= kExhaustiveUnionSize || n <= 3;
      if (!enumerate) r.exhaustive = false;
      std::mt19937_64 rng(kSampleSeed);
      std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        if (!small_ok) return;
        if (!pick.empty() && sign(delta(d, make_set(pick), bb), alpha) < 0) small_ok = false;
        if (pick.size() + 1 >= n) return;
        for (std::size_t i = from; i < new_points.size(); ++i) {
          if (!enumerate && ++visited > kSamples) return;
          pick.push_back(new_points[i]);
          dfs(i + 1);
          pick.pop_back();
        }
      };
      dfs(0);
    }
    r.checks.push_back({"small_extensions_closed", small_ok, {}, ""});
    r.checks.push_back({"transcendental_over_a", transcendental_over(d, aa, d.all()), {}, ""});
    if (all_pass(r.checks)) return r;
  }
  fail(ErrorCode::kInternal, "free_power_patch: placement failed verification");
}

namespace {

PatchResult rational_patches(const ElementSet& a, const ElementSet& b, unsigned t,
                             const ColoredStructure& s, bool zero_union) {
  const Alpha& alpha = s.alpha();
  const char* op = zero_union ? "rational_zero_extension" : "rational_minimal_extension";
  require(alpha.is_rational(), ErrorCode::kIrrationalAlpha, std::string(op) + " needs rational alpha");
  require(alpha.num() != alpha.den(), ErrorCode::kAlphaOne, std::string(op) + " needs alpha < 1");
  const PreDimValue gap = patch_preconditions(a, b, s, op);
  const ApproximationPair pair = rational_pair(alpha, t);
  const std::size_t fresh = to_size(pair.s);
  const std::size_t k = to_size(pair.k);
  std::size_t copies = 1;
  if (zero_union) {
    // delta(B/A) = (n*dim - m*colors)/n = p/n.
    BigInt p = alpha.den() * gap.dim - alpha.num() * gap.color;
    check_invariant(sgn(p) >= 0, "A <= B forces delta(B/A) >= 0");
    copies = to_size(p);
  }
  const Workspace w = workspace_on(a, b, s);
  const ExactValue minus_one_over_n = ExactValue::of(Rational(-1) / Rational(alpha.den()));
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    PatchResult r;
    r.pair = pair;
    r.copies = copies;
    r.structure = add_patches(w, fresh, k, copies, static_cast<unsigned long>(attempt) * k, r.added);
    const ColoredStructure& d = r.structure;
    const ElementSet new_points = indices_of(d, r.added);
    const ElementSet bb = indices_of(d, s.ids_of(b));
    const ElementSet aa = indices_of(d, s.ids_of(a));
    if (!zero_union) {
      r.value = ExactValue::of(delta(d, new_points, bb));
      r.checks.push_back({"gap_is_minus_one_over_n", compare(r.value, minus_one_over_n, alpha) == 0,
                          {}, r.value.to_string()});
      bool exhaustive = k <= 20;
      bool minimal = exhaustive ? is_minimal_pair(bb, d.all(), d)
                                : nonnegative_parts(d, bb, new_points, true, 0, r.exhaustive) &&
                                      sign(r.value, alpha) < 0;
      if (!exhaustive) r.exhaustive = false;
      r.checks.push_back({"minimal_pair", minimal, {}, ""});
    } else {
      r.value = ExactValue::of(delta(d, d.all(), aa));
      r.checks.push_back({"union_gap_is_zero", sign(r.value, alpha) == 0, {}, r.value.to_string()});
      // B <= D' whenever |D' \ B| <= t.
      bool small_ok = true;
      std::vector<std::size_t> pick;
      std::uint64_t visited = 0;
      std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        if (!small_ok) return;
        if (!pick.empty() && sign(delta(d, make_set(pick), bb), alpha) < 0) small_ok = false;
        if (pick.size() >= t) return;
        for (std::size_t i = from; i < new_points.size(); ++i) {
          if (++visited > 200'000) {
            r.exhaustive = false;
            return;
          }
          pick.push_back(new_points[i]);
          dfs(i + 1);
          pick.pop_back();
        }
      };
      dfs(0);
      r.checks.push_back({"small_extensions_closed", small_ok, {}, ""});
    }
    r.checks.push_back({"a_closed_in_d", closed_check(d, aa, bb, 40, r.exhaustive), {}, ""});
    r.checks.push_back({"transcendental_over_a", transcendental_over(d, aa, d.all()), {}, ""});
    if (all_pass(r.checks)) return r;
  }
  fail(ErrorCode::kInternal, std::string(op) + ": placement failed verification");
}

}  // namespace

PatchResult rational_minimal_extension(const ElementSet& a, const ElementSet& b, unsigned t,
                                       const ColoredStructure& s) {
  return rational_patches(a, b, t, s, false);
}

PatchResult rational_zero_extension(const ElementSet& a, const ElementSet& b, unsigned t,
                                    const ColoredStructure& s) {
  return rational_patches(a, b, t, s, true);
}

ChainResult minimal_pair_chain(const Alpha& alpha, std::size_t depth, std::size_t ambient_budget) {
  require(!alpha.is_rational(), ErrorCode::kRationalAlpha, "minimal_pair_chain needs irrational alpha");
  // Plan every level before building anything.
  std::vector<ApproximationPair> pairs;
  std::vector<ExactValue> windows;
  std::size_t dims = 1;
  const ExactValue one_minus_alpha{BigInt(1), BigInt(1), BigInt(1)};
  for (std::size_t level = 1; level <= depth; ++level) {
    BigInt scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), level);
    ExactValue window = one_minus_alpha.scaled(Rational(BigInt(1), scale));
    ApproximationPair pair = dirichlet_window(alpha, window);
    dims += to_size(pair.s);
    require(dims <= ambient_budget, ErrorCode::kBudgetExceeded,
            "chain needs more than " + std::to_string(ambient_budget) + " coordinates");
    pairs.push_back(pair);
    windows.push_back(window.scaled(Rational(-1)));
  }
  require(dims <= ambient_budget, ErrorCode::kBudgetExceeded, "chain needs at least one coordinate");

  ChainResult result;
  result.structure = ColoredStructure(alpha, Backend::linear(1), {{"c0", {Rational(1)}, true}});
  ChainLevel seed;
  seed.d = {"c0"};
  seed.e = {"c0"};
  seed.value = ExactValue::of(PreDimValue{1, 1});
  result.levels.push_back(seed);
  for (std::size_t level = 1; level <= depth; ++level) {
    const ApproximationPair& pair = pairs[level - 1];
    const std::size_t fresh = to_size(pair.s);
    const std::size_t k = to_size(pair.k);
    ColoredStructure& cur = result.structure;
    const std::size_t first = cur.backend().ambient_dim;
    std::vector<std::vector<Rational>> span_basis;
    for (std::size_t i : greedy_basis(cur, cur.all())) span_basis.push_back(cur.element(i).vec);
    PatchAxes axes = patch_axes(first, fresh, span_basis);
    ChainLevel lv;
    const std::string prefix = "l" + std::to_string(level) + ".";
    std::vector<GroundElement> extra;
    for (std::size_t i = 0; i < fresh; ++i) {
      std::string id = prefix + "e" + std::to_string(i + 1);
      extra.push_back({id, axes.axes[i], true});
      lv.e.push_back(id);
    }
    for (std::size_t j = 0; j < k - fresh; ++j) {
      std::string id = prefix + "f" + std::to_string(j + 1);
      extra.push_back({id, moment_point(j + 1, axes), true});
      lv.f.push_back(id);
    }
    cur = cur.extended(std::move(extra), axes.dim);
    lv.d = result.levels.back().d;
    lv.d.insert(lv.d.end(), lv.e.begin(), lv.e.end());
    lv.d.insert(lv.d.end(), lv.f.begin(), lv.f.end());
    std::sort(lv.d.begin(), lv.d.end());
    lv.pair = pair;
    lv.window = windows[level - 1];
    result.levels.push_back(std::move(lv));
  }
  // Verification on the finished structure.
  const ColoredStructure& d = result.structure;
  for (std::size_t level = 1; level <= depth; ++level) {
    ChainLevel& lv = result.levels[level];
    const ElementSet lower = d.set_of(result.levels[level - 1].d);
    const ElementSet upper = d.set_of(lv.d);
    lv.value = ExactValue::of(delta(d, upper, lower));
    const bool in_window = sign(lv.value, alpha) < 0 && compare(lv.window, lv.value, alpha) < 0;
    const std::string tag = "level" + std::to_string(level);
    result.checks.push_back({tag + "_window", in_window, {}, lv.value.to_string()});
    result.checks.push_back({tag + "_minimal_pair", is_minimal_pair(lower, upper, d), {}, ""});
    result.checks.push_back(
        {tag + "_bases_over_lower",
         rel_rank(d.geometry(), upper, lower) == to_size(lv.pair.s), {}, ""});
    if (level >= 2) {
      const bool rising = compare(result.levels[level - 1].value, lv.value, alpha) < 0;
      result.checks.push_back({tag + "_rising", rising, {}, ""});
    }
  }
  check_invariant(all_pass(result.checks), "minimal_pair_chain failed its own verification");
  return result;
}

}  // namespace bicolor
