#include "bicolor/closure.hpp"

#include <functional>

#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"
#include "bicolor/search.hpp"

namespace bicolor {
namespace {

void check_subset(const ElementSet& a, const ColoredStructure& s) {
  for (std::size_t i : a) {
    require(i < s.size(), ErrorCode::kUnknownElement, "element index " + std::to_string(i));
  }
}

// Calls visit(delta(C / A), |C|) for every C inside `extra` (including the
// empty set and `extra` itself); stops early when visit returns false.
bool for_each_relative_delta(const ColoredStructure& s, const ElementSet& a,
                             const ElementSet& extra,
                             const std::function<bool(const PreDimValue&, std::size_t)>& visit) {
  EchelonSpan span = span_of(s.geometry(), a);
  const std::size_t base_rank = span.rank();
  std::size_t size = 0;
  std::int64_t colors = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (i == extra.size()) {
      PreDimValue v{static_cast<std::int64_t>(span.rank() - base_rank), colors};
      return visit(v, size);
    }
    if (!dfs(i + 1)) return false;
    span.push(s.geometry().vector(extra[i]));
    ++size;
    colors += s.is_colored(extra[i]) ? 1 : 0;
    bool go_on = dfs(i + 1);
    colors -= s.is_colored(extra[i]) ? 1 : 0;
    --size;
    span.pop();
    return go_on;
  };
  return dfs(0);
}

// Validates a closed set against the colored-exclusion rule: nothing colored
// outside X may lie in its span.
void check_colored_exclusion(const ElementSet& x, const ElementSet& pool, const ColoredStructure& s) {
  if (s.geometry().is_free()) return;
  EchelonSpan span = span_of(s.geometry(), x);
  for (std::size_t i : pool) {
    if (set_contains(x, i) || !s.is_colored(i)) continue;
    check_invariant(!span.contains(s.geometry().vector(i)),
                    "closed set has a colored point in its span");
  }
}

}  // namespace

ClosedReport is_closed_in(const ElementSet& x, const ElementSet& b, const ColoredStructure& s) {
  check_subset(b, s);
  require(is_subset(x, b), ErrorCode::kNotInAmbient, "is_closed: X is not inside the ambient set");
  ClosedReport report;
  auto v = find_violation(s, x, b);
  if (v) {
    report.closed = false;
    report.witness = v->witness;
    report.witness_delta = v->value;
  } else {
    check_colored_exclusion(x, b, s);
  }
  return report;
}

ClosedReport is_closed(const ElementSet& x, const ColoredStructure& s) {
  check_subset(x, s);
  require_k_plus(s, "is_closed");
  return is_closed_in(x, s.all(), s);
}

ClosureResult closure(const ElementSet& a, const ColoredStructure& s) {
  check_subset(a, s);
  require_k_plus(s, "closure");
  ClosureResult result{a, 0};
  const ElementSet everything = s.all();
  while (auto v = find_violation(s, result.closure, everything)) {
    result.closure = set_union(result.closure, v->witness);
    ++result.steps;
  }
  check_colored_exclusion(result.closure, everything, s);
  return result;
}

bool is_minimal_pair(const ElementSet& a, const ElementSet& b, const ColoredStructure& s) {
  check_subset(b, s);
  require(is_subset(a, b), ErrorCode::kNotInAmbient, "is_minimal_pair: A is not inside B");
  const ElementSet extra = set_minus(b, a);
  if (extra.empty()) return false;
  const Alpha& alpha = s.alpha();
  bool whole_negative = false;
  bool proper_ok = for_each_relative_delta(s, a, extra, [&](const PreDimValue& v, std::size_t n) {
    if (n == extra.size()) {
      whole_negative = sign(v, alpha) < 0;
      return true;
    }
    return sign(v, alpha) >= 0;
  });
  return proper_ok && whole_negative;
}

bool is_intrinsic(const ElementSet& a, const ElementSet& b, const ColoredStructure& s) {
  check_subset(b, s);
  require(is_subset(a, b), ErrorCode::kNotInAmbient, "is_intrinsic: A is not inside B");
  const ElementSet extra = set_minus(b, a);
  if (extra.empty()) return true;
  const PreDimValue whole = delta(s, extra, a);
  const Alpha& alpha = s.alpha();
  return for_each_relative_delta(s, a, extra, [&](const PreDimValue& v, std::size_t n) {
    return n == extra.size() || compare(whole, v, alpha) < 0;
  });
}

std::vector<ElementSet> intrinsic_tower(const ElementSet& a, const ElementSet& b,
                                        const ColoredStructure& s) {
  require(is_intrinsic(a, b, s), ErrorCode::kInvalidInput,
          "intrinsic_tower: B is not an intrinsic extension of A");
  std::vector<ElementSet> tower{a};
  ElementSet current = a;
  while (current != b) {
    auto v = find_violation(s, current, b);
    check_invariant(v.has_value(), "intrinsic extension stalled before reaching B");
    current = set_union(current, v->witness);
    check_invariant(is_minimal_pair(tower.back(), current, s), "tower step is not a minimal pair");
    tower.push_back(current);
  }
  return tower;
}

ElementSet closure_n(const ElementSet& a, const ColoredStructure& s, std::size_t n) {
  check_subset(a, s);
  ElementSet result = a;
  if (n <= 1) return result;
  // Points of an intrinsic extension outside A are colored: a plain point
  // never lowers delta.
  const ElementSet candidates = s.colored_part(set_minus(s.all(), a));
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (!chosen.empty()) {
      ElementSet w(chosen.begin(), chosen.end());
      if (!is_subset(w, result)) {
        ElementSet b = set_union(a, w);
        if (is_intrinsic(a, b, s)) result = set_union(result, w);
      }
    }
    if (chosen.size() + 1 >= n) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      chosen.push_back(candidates[i]);
      dfs(i + 1);
      chosen.pop_back();
    }
  };
  dfs(0);
  return result;
}

PreDimValue d_value(const ElementSet& a, const ColoredStructure& s) {
  check_subset(a, s);
  require_k_plus(s, "d_value");
  const PreDimValue via_closure = delta(s, closure(a, s).closure);
  auto relative = min_relative_delta(s, a, s.all());
  if (!relative) return via_closure;
  const PreDimValue exhaustive = delta(s, a) + *relative;
  // In a finite ambient the closure is an intrinsic extension, so the least
  // superset value is attained there.
  check_invariant(compare(exhaustive, via_closure, s.alpha()) == 0,
                  "d_value disagrees with delta of the closure");
  return exhaustive;
}

ElementSet big_cl(const ElementSet& a, const ColoredStructure& s) {
  const PreDimValue base = d_value(a, s);
  ElementSet out;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (set_contains(a, x) || compare(d_value(set_union(a, {x}), s), base, s.alpha()) == 0) {
      out.push_back(x);
    }
  }
  return out;
}

DIndependence d_independent(const ElementSet& a, const ElementSet& b, const ElementSet& z,
                            const ColoredStructure& s) {
  check_subset(a, s);
  check_subset(b, s);
  check_subset(z, s);
  require_k_plus(s, "d_independent");
  DIndependence r;
  const ElementSet az = set_union(a, z);
  const ElementSet bz = set_union(b, z);
  const ElementSet abz = set_union(az, b);
  r.d_over_base = d_value(az, s) - d_value(z, s);
  r.d_over_base_and_b = d_value(abz, s) - d_value(bz, s);
  r.closure_az = closure(az, s).closure;
  r.closure_bz = closure(bz, s).closure;
  r.closure_z = closure(z, s).closure;
  r.base_closed = r.closure_z == z;
  r.independent = compare(r.d_over_base, r.d_over_base_and_b, s.alpha()) == 0 &&
                  set_intersection(r.closure_az, r.closure_bz) == r.closure_z;
  if (r.base_closed) {
    const ElementSet cl_abz = closure(abz, s).closure;
    const bool characterized =
        set_intersection(r.closure_az, r.closure_bz) == z &&
        cl_abz == set_union(r.closure_az, r.closure_bz) &&
        dim_independent(s.geometry(), r.closure_az, r.closure_bz, z);
    check_invariant(characterized == r.independent,
                    "D-independence and its closure characterization disagree");
  }
  return r;
}

}  // namespace bicolor
