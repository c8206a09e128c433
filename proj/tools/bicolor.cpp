// bicolor: command-line front end. Every command prints one canonical JSON
// report. Exit codes: 0 computed (a false verdict is still 0), 1 input or
// validation error, 2 internal invariant breach.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bicolor/amalgam.hpp"
#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/construct.hpp"
#include "bicolor/error.hpp"
#include "bicolor/io.hpp"
#include "bicolor/workbench.hpp"

namespace {

using namespace bicolor;

struct Globals {
  std::string structure;
  std::string alpha;
  std::string out;
  std::string report;
};

struct Args {
  std::string set, over, big, a, b, z, base, match, family, map, file1, file2;
  std::string epsilon, mu;
  std::size_t n = 2;
  unsigned t = 0;
  std::size_t depth = 1;
  std::size_t budget = 1;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
};

ColoredStructure need_structure(const Globals& g) {
  require(!g.structure.empty(), ErrorCode::kInvalidInput, "--structure is required");
  return load_structure(g.structure);
}

Alpha need_alpha(const Globals& g) {
  require(!g.alpha.empty(), ErrorCode::kInvalidInput, "--alpha is required");
  return parse_alpha(g.alpha);
}

ElementSet ids(const ColoredStructure& s, const std::string& text) { return s.set_of(split_ids(text)); }

void emit(const Globals& g, Json report) { write_text(g.report, dump_canonical(report)); }

// Structures go to --out when given, otherwise into the report.
void attach(const Globals& g, Json& report, const ColoredStructure& s) {
  if (g.out.empty()) {
    report["structure"] = structure_to_json(s);
  } else {
    save_structure(s, g.out);
    report["structureFile"] = g.out;
  }
}

Json patch_report(const Globals& g, const PatchResult& r) {
  Json report = {{"added", r.added},
                 {"pair", pair_to_json(r.pair)},
                 {"copies", r.copies},
                 {"value", value_to_json(r.value)},
                 {"exhaustive", r.exhaustive},
                 {"checks", checks_to_json(r.checks)},
                 {"pass", all_pass(r.checks)}};
  attach(g, report, r.structure);
  return report;
}

std::vector<ElementSet> parse_family(const ColoredStructure& s, const std::string& text) {
  std::vector<ElementSet> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t semi = text.find(';', start);
    const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    out.push_back(ids(s, part));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact pre-dimension workbench for bi-colored structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Args x;
  app.add_option("--structure", g.structure, "Structure file (canonical JSON)");
  app.add_option("--alpha", g.alpha, "Alpha as JSON or p/q");
  app.add_option("--out", g.out, "Write the resulting structure here");
  app.add_option("--report", g.report, "Write the report here instead of stdout");

  std::function<void()> action;
  auto cmd = [&](CLI::App* parent, const char* name, const char* help, std::function<void()> body) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, body] { action = body; });
    return sub;
  };

  auto* delta_cmd = cmd(&app, "delta", "Pre-dimension of a set, optionally over another", [&] {
    const auto s = need_structure(g);
    const ElementSet a = ids(s, x.set), over = ids(s, x.over);
    emit(g, {{"set", ids_to_json(s, a)}, {"over", ids_to_json(s, over)},
             {"delta", value_to_json(delta(s, a, over))}});
  });
  delta_cmd->add_option("--set", x.set, "Ids, comma separated");
  delta_cmd->add_option("--over", x.over, "Base ids");

  cmd(&app, "kplus", "Membership in the class of structures with nonnegative pre-dimension", [&] {
    const auto s = need_structure(g);
    auto w = k_plus_witness(s);
    Json report = {{"inKPlus", !w.has_value()}};
    if (w) report["witness"] = ids_to_json(s, *w);
    emit(g, report);
  });

  auto* closed_cmd = cmd(&app, "closed", "Is the set closed in the structure", [&] {
    const auto s = need_structure(g);
    auto r = is_closed(ids(s, x.set), s);
    Json report = {{"closed", r.closed}, {"witness", ids_to_json(s, r.witness)}};
    if (!r.closed) report["witnessDelta"] = value_to_json(r.witness_delta);
    emit(g, report);
  });
  closed_cmd->add_option("--set", x.set, "Ids")->required();

  auto* closure_cmd = cmd(&app, "closure", "Least closed superset", [&] {
    const auto s = need_structure(g);
    auto r = closure(ids(s, x.set), s);
    emit(g, {{"closure", ids_to_json(s, r.closure)}, {"steps", r.steps}});
  });
  closure_cmd->add_option("--set", x.set, "Ids");

  auto* cln_cmd = cmd(&app, "cln", "Union of intrinsic extensions adding fewer than n points", [&] {
    const auto s = need_structure(g);
    emit(g, {{"closure", ids_to_json(s, closure_n(ids(s, x.set), s, x.n))}, {"n", x.n}});
  });
  cln_cmd->add_option("--set", x.set, "Ids");
  cln_cmd->add_option("--n", x.n, "Bound on added points")->required();

  auto* minpairs_cmd = cmd(&app, "minpairs", "Minimal pair and intrinsic extension tests", [&] {
    const auto s = need_structure(g);
    const ElementSet a = ids(s, x.set), b = ids(s, x.big);
    const bool intrinsic = is_intrinsic(a, b, s);
    Json report = {{"minimalPair", is_minimal_pair(a, b, s)}, {"intrinsic", intrinsic},
                   {"relativeDelta", value_to_json(delta(s, b, a))}};
    if (intrinsic) {
      Json tower = Json::array();
      for (const auto& level : intrinsic_tower(a, b, s)) tower.push_back(ids_to_json(s, level));
      report["tower"] = std::move(tower);
    }
    emit(g, report);
  });
  minpairs_cmd->add_option("--set", x.set, "Ids of A");
  minpairs_cmd->add_option("--big", x.big, "Ids of B")->required();

  auto* dvalue_cmd = cmd(&app, "dvalue", "Least pre-dimension over supersets, and CL", [&] {
    const auto s = need_structure(g);
    const ElementSet a = ids(s, x.set);
    emit(g, {{"d", value_to_json(d_value(a, s))}, {"bigCl", ids_to_json(s, big_cl(a, s))}});
  });
  dvalue_cmd->add_option("--set", x.set, "Ids");

  auto* dindep_cmd = cmd(&app, "dindep", "D-independence of A and B over Z", [&] {
    const auto s = need_structure(g);
    auto r = d_independent(ids(s, x.a), ids(s, x.b), ids(s, x.z), s);
    emit(g, {{"independent", r.independent},
             {"baseClosed", r.base_closed},
             {"dOverBase", value_to_json(r.d_over_base)},
             {"dOverBaseAndB", value_to_json(r.d_over_base_and_b)},
             {"closureAZ", ids_to_json(s, r.closure_az)},
             {"closureBZ", ids_to_json(s, r.closure_bz)},
             {"closureZ", ids_to_json(s, r.closure_z)}});
  });
  dindep_cmd->add_option("--a", x.a, "Ids of A");
  dindep_cmd->add_option("--b", x.b, "Ids of B");
  dindep_cmd->add_option("--z", x.z, "Ids of Z");

  auto* amalgam_cmd = cmd(&app, "amalgam", "Free amalgam over a closed common part", [&] {
    const auto m1 = load_structure(x.file1);
    const auto m2 = load_structure(x.file2);
    auto r = free_amalgam(m1, m2, split_ids(x.base), parse_map(x.match));
    auto checks = verify_amalgam(r, m1, m2);
    Json left = Json::object(), right = Json::object();
    for (const auto& [from, to] : r.left) left[from] = to;
    for (const auto& [from, to] : r.right) right[from] = to;
    Json report = {{"left", left}, {"right", right}, {"checks", checks_to_json(checks)},
                   {"pass", all_pass(checks)}};
    attach(g, report, r.structure);
    emit(g, report);
  });
  amalgam_cmd->add_option("-1", x.file1, "First structure")->required();
  amalgam_cmd->add_option("-2", x.file2, "Second structure")->required();
  amalgam_cmd->add_option("--base", x.base, "Base ids in the first structure");
  amalgam_cmd->add_option("--match", x.match, "first=second pairs for the base");

  auto* dirichlet_cmd = cmd(&app, "dirichlet", "Least k with 0 < k*alpha - s < epsilon", [&] {
    const Alpha alpha = need_alpha(g);
    auto p = dirichlet_window(alpha, parse_rational(x.epsilon));
    emit(g, {{"pair", pair_to_json(p)}, {"gap", value_to_json(ExactValue{-p.s, -p.k, 1})}});
  });
  dirichlet_cmd->add_option("--epsilon", x.epsilon, "Rational window")->required();

  auto* epsilon_cmd = cmd(&app, "epsilon", "Smallest magnitude of a negative value d - alpha*c, d,c < n", [&] {
    emit(g, {{"n", x.n}, {"epsilon", value_to_json(epsilon_bound(static_cast<int>(x.n), need_alpha(g)))}});
  });
  epsilon_cmd->add_option("--n", x.n, "Bound")->required();

  CLI::App* construct = app.add_subcommand("construct", "Constructions with verification reports");
  construct->require_subcommand(1);

  auto* patch_cmd = cmd(construct, "patch", "Colored patch with a small negative drop (irrational alpha)", [&] {
    const auto s = need_structure(g);
    emit(g, patch_report(g, transcendental_patch(ids(s, x.a), ids(s, x.b), parse_rational(x.epsilon), s)));
  });
  patch_cmd->add_option("--a", x.a, "Ids of A");
  patch_cmd->add_option("--b", x.b, "Ids of B")->required();
  patch_cmd->add_option("--epsilon", x.epsilon, "Window")->required();

  auto* power_cmd = cmd(construct, "power", "Free union of patches below mu", [&] {
    const auto s = need_structure(g);
    emit(g, patch_report(g, free_power_patch(ids(s, x.a), ids(s, x.b), parse_rational(x.mu), x.n, s)));
  });
  power_cmd->add_option("--a", x.a, "Ids of A");
  power_cmd->add_option("--b", x.b, "Ids of B")->required();
  power_cmd->add_option("--mu", x.mu, "Upper bound")->required();
  power_cmd->add_option("--n", x.n, "Small extensions stay closed below this size");

  auto* ratmin_cmd = cmd(construct, "ratmin", "Minimal pair with drop -1/n (rational alpha)", [&] {
    const auto s = need_structure(g);
    emit(g, patch_report(g, rational_minimal_extension(ids(s, x.a), ids(s, x.b), x.t, s)));
  });
  ratmin_cmd->add_option("--a", x.a, "Ids of A");
  ratmin_cmd->add_option("--b", x.b, "Ids of B")->required();
  ratmin_cmd->add_option("--t", x.t, "Lower bound on the patch size");

  auto* ratzero_cmd = cmd(construct, "ratzero", "Free union of minimal pairs with total drop 0", [&] {
    const auto s = need_structure(g);
    emit(g, patch_report(g, rational_zero_extension(ids(s, x.a), ids(s, x.b), x.t, s)));
  });
  ratzero_cmd->add_option("--a", x.a, "Ids of A");
  ratzero_cmd->add_option("--b", x.b, "Ids of B")->required();
  ratzero_cmd->add_option("--t", x.t, "Lower bound on the patch size");

  auto* chain_cmd = cmd(construct, "chain", "Chain of minimal pairs with shrinking drops", [&] {
    auto r = minimal_pair_chain(need_alpha(g), x.depth, x.budget);
    Json levels = Json::array();
    for (const auto& l : r.levels) {
      levels.push_back({{"d", l.d}, {"e", l.e}, {"f", l.f}, {"pair", pair_to_json(l.pair)},
                        {"value", value_to_json(l.value)}, {"window", value_to_json(l.window)}});
    }
    Json report = {{"levels", levels}, {"checks", checks_to_json(r.checks)}, {"pass", all_pass(r.checks)}};
    attach(g, report, r.structure);
    emit(g, report);
  });
  chain_cmd->add_option("--depth", x.depth, "Number of levels");
  chain_cmd->add_option("--budget", x.budget, "Ambient dimension budget")->required();

  auto* basis_cmd = cmd(construct, "basis", "Plain points in general position in span(B)", [&] {
    const auto s = need_structure(g);
    auto r = generic_basis_extension(ids(s, x.a), ids(s, x.b), x.n, s);
    Json report = {{"added", r.added}, {"checks", checks_to_json(r.checks)}, {"pass", all_pass(r.checks)}};
    attach(g, report, r.structure);
    emit(g, report);
  });
  basis_cmd->add_option("--a", x.a, "Ids of A");
  basis_cmd->add_option("--b", x.b, "Ids of B")->required();
  basis_cmd->add_option("--n", x.n, "Number of points")->required();

  auto* dsystem_cmd = cmd(construct, "dsystem", "Sunflower with a closed root", [&] {
    const auto s = need_structure(g);
    auto r = delta_system_closed_root(parse_family(s, x.family), x.n, s);
    emit(g, {{"root", ids_to_json(s, r.root)},
             {"members", r.members},
             {"discarded", r.discarded},
             {"discardBound", r.discard_bound}});
  });
  dsystem_cmd->add_option("--family", x.family, "Members separated by ';', ids by ','")->required();
  dsystem_cmd->add_option("--n", x.n, "Members wanted")->required();

  auto* generic_cmd = cmd(&app, "generic", "Bounded generic structure by repeated amalgamation", [&] {
    const ColoredStructure seed = g.structure.empty() ? ColoredStructure(need_alpha(g), Backend::linear(0), {})
                                                      : need_structure(g);
    auto r = build_generic(seed, x.steps, x.budget, x.seed);
    Json report = {{"steps", r.steps_taken}, {"saturated", r.saturated}, {"log", r.log},
                   {"catalogVersion", kCatalogVersion}, {"size", r.structure.size()}};
    attach(g, report, r.structure);
    emit(g, report);
  });
  generic_cmd->add_option("--steps", x.steps, "Amalgamation steps")->required();
  generic_cmd->add_option("--budget", x.budget, "Catalog size budget");
  generic_cmd->add_option("--seed", x.seed, "Shuffle seed");

  CLI::App* audit = app.add_subcommand("audit", "Finite richness audits");
  audit->require_subcommand(1);
  auto* rich_cmd = cmd(audit, "rich", "Every catalog task extends along every strong embedding", [&] {
    emit(g, audit_to_json(audit_richness(need_structure(g), x.budget)));
  });
  rich_cmd->add_option("--budget", x.budget, "Catalog size budget");

  auto* semi_cmd = cmd(audit, "semigeneric", "Search for a free extension over cl^n", [&] {
    const auto s = need_structure(g);
    const auto big = load_structure(x.big);
    emit(g, audit_to_json(audit_semi_generic(s, parse_map(x.map), big, x.n)));
  });
  semi_cmd->add_option("--big", x.big, "Structure file holding B")->required();
  semi_cmd->add_option("--map", x.map, "The embedding of A: idInB=idInS pairs");
  semi_cmd->add_option("--n", x.n, "Closure bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  action();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bicolor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == bicolor::ErrorCode::kInternal ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
