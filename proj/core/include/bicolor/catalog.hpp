#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bicolor/structure.hpp"

namespace bicolor {

inline constexpr int kCatalogVersion = 1;
inline constexpr std::size_t kMaxCatalogBudget = 5;

enum class TaskKind { kAlgebraic, kTranscendental, kMixed };
std::string_view task_kind_name(TaskKind kind);

// An extension problem A <= B. `big` holds B; `base` lists the ids of A in
// B and `small` is the substructure on them.
struct ExtensionTask {
  std::string name;
  ColoredStructure small;
  ColoredStructure big;
  std::vector<std::string> base;
  TaskKind kind = TaskKind::kTranscendental;
  // Mixed tasks: ids of the algebraic layer B1 with A <= B1 <= B.
  std::vector<std::string> split;
};

// Classifies B over A by which new points lie in span(A).
TaskKind classify_task(const ColoredStructure& big, const ElementSet& base, ElementSet* split = nullptr);

// Invariant of B with A marked under relabelling: colors, membership in A
// and the rank of every subset, minimised over all orderings.
std::vector<int> task_signature(const ColoredStructure& big, const ElementSet& base);

// Deterministic list of pairwise non-isomorphic tasks with |B| and the
// ambient dimension at most `size_budget`. Bases are independent sets; new
// material is a single point (plain or colored, transcendental, or plain
// algebraic), a parallel pair, or a patch: a minimal-pair patch for rational
// alpha < 1 and a Dirichlet patch at epsilon = 1/4 for irrational alpha.
// The free backend only gets the transcendental single points.
std::vector<ExtensionTask> task_catalog(const Alpha& alpha, std::size_t size_budget,
                                        BackendKind backend = BackendKind::kLinear);

}  // namespace bicolor
