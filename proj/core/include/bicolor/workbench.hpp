#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bicolor/catalog.hpp"
#include "bicolor/io.hpp"
#include "bicolor/structure.hpp"

namespace bicolor {

inline constexpr std::size_t kEmbeddingCap = 200;
inline constexpr std::size_t kMaxBuilderAmbient = 4096;

struct EmbeddingOutcome {
  EmbeddingMap embedding;  // A -> S
  bool extended = false;
  EmbeddingMap extension;  // B -> S when extended
};

struct TaskOutcome {
  std::string task;
  std::string kind;
  std::size_t embeddings_tried = 0;
  bool capped = false;  // the embedding cap was reached
  std::vector<EmbeddingOutcome> outcomes;
  bool pass() const;
};

struct AuditReport {
  std::string audit;
  int catalog_version = kCatalogVersion;
  std::size_t cap = kEmbeddingCap;
  std::string alpha_kind;
  std::vector<TaskOutcome> tasks;
  bool pass = false;
};

Json audit_to_json(const AuditReport& report);

// Strong embeddings of `a` into S (L_p-embeddings with closed image) in
// order of image tuples, at most `cap` of them.
std::vector<EmbeddingMap> strong_embeddings(const ColoredStructure& a, const ColoredStructure& s,
                                            std::size_t cap = kEmbeddingCap);

// A strong embedding of task.big into S extending f, if one exists.
std::optional<EmbeddingMap> find_strong_extension(const ExtensionTask& task, const EmbeddingMap& f,
                                                  const ColoredStructure& s);

// Every catalog task, every strong embedding of its base (capped): does it
// extend to a strong embedding of the whole task?
AuditReport audit_richness(const ColoredStructure& s, std::size_t size_budget);

// Searches extensions g of f: A -> S (A = domain of f, inside `big`) such
// that cl^n(g(B)) is g(B) together with cl^n(f(A)), the two free over f(A).
// The first witness found is reported. At most `cap` candidates are tried.
AuditReport audit_semi_generic(const ColoredStructure& s, const EmbeddingMap& f,
                               const ColoredStructure& big, std::size_t n,
                               std::size_t cap = kEmbeddingCap);

struct BuildOptions {
  bool verify_each_step = false;  // in_k_plus after every amalgamation
};

struct BuildResult {
  ColoredStructure structure;
  std::size_t steps_taken = 0;
  bool saturated = false;  // stopped early: no failing (task, embedding) left
  std::vector<std::string> log;  // task name per step
};

// Round-robin repair of richness failures by free amalgamation. The seed
// only fixes the task order, through a shuffle.
BuildResult build_generic(const ColoredStructure& seed, std::size_t steps, std::size_t size_budget,
                          std::uint64_t rng_seed, BuildOptions options = {});

}  // namespace bicolor
