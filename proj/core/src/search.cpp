#include "bicolor/search.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "bicolor/error.hpp"

namespace bicolor {
namespace {

// Pieces up to this size are searched subset by subset.
constexpr std::size_t kDirectSearchLimit = 14;
constexpr std::size_t kMinimizeLimit = 22;
constexpr std::uint64_t kNodeBudget = 3'000'000;

struct Pieces {
  std::vector<std::size_t> loops;
  std::vector<std::vector<std::size_t>> connected;  // size >= 2, sorted
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Row of an echelon form that remembers which input vectors produced it.
struct TrackedRow {
  SparseVector vec;
  SparseVector combo;  // column = input index
};

void make_primitive_jointly(SparseVector& vec, SparseVector& combo) {
  BigInt g = 0;
  for (const auto& e : vec) g = gcd(g, e.val);
  for (const auto& e : combo) g = gcd(g, e.val);
  if (g <= 1) return;
  for (auto& e : vec) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
  for (auto& e : combo) mpz_divexact(e.val.get_mpz_t(), e.val.get_mpz_t(), g.get_mpz_t());
}

const BigInt* entry_at(const SparseVector& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const SparseEntry& e, std::uint32_t c) { return e.col < c; });
  return (it != v.end() && it->col == col) ? &it->val : nullptr;
}

// Reduces `vec` (with combination `combo`) against tracked rows.
void reduce_tracked(const std::vector<TrackedRow>& rows, SparseVector& vec, SparseVector& combo) {
  for (const auto& row : rows) {
    if (vec.empty()) return;
    const BigInt* hit = entry_at(vec, row.vec.front().col);
    if (hit == nullptr) continue;
    BigInt coef = *hit;
    const BigInt& lead = row.vec.front().val;
    vec = scaled_difference(lead, vec, coef, row.vec);
    combo = scaled_difference(lead, combo, coef, row.combo);
    make_primitive_jointly(vec, combo);
  }
}

// Splits nonzero vectors into connected pieces of their matroid using
// fundamental circuits; coloops are dropped since they never help.
Pieces decompose(const std::vector<SparseVector>& vecs) {
  Pieces pieces;
  UnionFind uf(vecs.size());
  std::vector<bool> in_circuit(vecs.size(), false);
  std::vector<TrackedRow> rows;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (vecs[i].empty()) {
      pieces.loops.push_back(i);
      continue;
    }
    SparseVector vec = vecs[i];
    SparseVector combo{{static_cast<std::uint32_t>(i), BigInt(1)}};
    reduce_tracked(rows, vec, combo);
    if (vec.empty()) {
      for (const auto& e : combo) {
        uf.unite(i, e.col);
        in_circuit[e.col] = true;
      }
    } else {
      rows.push_back({std::move(vec), std::move(combo)});
    }
  }
  std::vector<std::vector<std::size_t>> classes(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (in_circuit[i]) classes[uf.find(i)].push_back(i);
  }
  for (auto& c : classes) {
    if (c.size() >= 2) pieces.connected.push_back(std::move(c));
  }
  return pieces;
}

enum class SearchOutcome { kFound, kNone, kBudget };

// Size-ascending depth-first search for the least subset with
// rank < alpha * size.
class LeastDenseSearch {
 public:
  LeastDenseSearch(const std::vector<SparseVector>& vecs, const Alpha& alpha)
      : vecs_(vecs), alpha_(alpha) {}

  SearchOutcome run(std::size_t max_size) {
    for (std::size_t t = 1; t <= std::min(max_size, vecs_.size()); ++t) {
      target_ = t;
      chosen_.clear();
      SearchOutcome out = dfs(0);
      if (out != SearchOutcome::kNone) return out;
    }
    return SearchOutcome::kNone;
  }

  const std::vector<std::size_t>& found() const { return found_; }
  std::size_t found_rank() const { return found_rank_; }

 private:
  SearchOutcome dfs(std::size_t from) {
    if (chosen_.size() == target_) {
      found_ = chosen_;
      found_rank_ = span_.rank();
      return SearchOutcome::kFound;
    }
    const std::size_t need = target_ - chosen_.size();
    const auto t = static_cast<std::int64_t>(target_);
    for (std::size_t i = from; i + need <= vecs_.size(); ++i) {
      if (++nodes_ > kNodeBudget) return SearchOutcome::kBudget;
      span_.push(vecs_[i]);
      // The final rank is at least the current one.
      if (alpha_.sign(static_cast<std::int64_t>(span_.rank()), t) < 0) {
        chosen_.push_back(i);
        SearchOutcome out = dfs(i + 1);
        chosen_.pop_back();
        if (out != SearchOutcome::kNone) {
          span_.pop();
          return out;
        }
      }
      span_.pop();
    }
    return SearchOutcome::kNone;
  }

  const std::vector<SparseVector>& vecs_;
  const Alpha& alpha_;
  EchelonSpan span_;
  std::size_t target_ = 0;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> found_;
  std::size_t found_rank_ = 0;
  std::uint64_t nodes_ = 0;
};

// Branch and bound for min over subsets of rank - alpha*size.
class MinimumSearch {
 public:
  MinimumSearch(const std::vector<SparseVector>& vecs, const Alpha& alpha)
      : vecs_(vecs), alpha_(alpha) {}

  PreDimValue run() {
    dfs(0, 0);
    return best_;
  }

 private:
  void dfs(std::size_t i, std::int64_t count) {
    PreDimValue here{static_cast<std::int64_t>(span_.rank()), count};
    if (compare(here, best_, alpha_) < 0) best_ = here;
    const auto remaining = static_cast<std::int64_t>(vecs_.size() - i);
    if (remaining == 0) return;
    PreDimValue bound{here.dim, count + remaining};
    if (compare(bound, best_, alpha_) >= 0) return;
    span_.push(vecs_[i]);
    dfs(i + 1, count + 1);
    span_.pop();
    dfs(i + 1, count);
  }

  const std::vector<SparseVector>& vecs_;
  const Alpha& alpha_;
  EchelonSpan span_;
  PreDimValue best_{0, 0};
};

// Independent sets of a matroid partition, with cached circuit queries.
class PartitionSets {
 public:
  PartitionSets(const std::vector<SparseVector>& vecs, std::size_t count)
      : vecs_(vecs), sets_(count) {
    for (auto& s : sets_) s.cache.assign(vecs.size(), std::nullopt);
  }

  bool holds(std::size_t j, std::size_t x) const {
    const auto& m = sets_[j].members;
    return std::find(m.begin(), m.end(), x) != m.end();
  }

  // Members of set j forming a circuit with x, or empty when set j + x is
  // independent. A copy of x already in set j is a circuit by itself.
  const std::vector<std::size_t>& circuit(std::size_t j, std::size_t x) {
    auto& s = sets_[j];
    if (s.dirty) rebuild(j);
    auto& slot = s.cache[x];
    if (slot) return *slot;
    std::vector<std::size_t> out;
    if (holds(j, x)) {
      out.push_back(x);
    } else {
      SparseVector vec = vecs_[x];
      SparseVector combo;
      reduce_tracked(s.rows, vec, combo);
      if (vec.empty()) {
        for (const auto& e : combo) out.push_back(e.col);
      }
    }
    slot = std::move(out);
    return *slot;
  }

  void remove(std::size_t j, std::size_t x) {
    auto& m = sets_[j].members;
    m.erase(std::find(m.begin(), m.end(), x));
    sets_[j].dirty = true;
  }

  void add(std::size_t j, std::size_t x) {
    sets_[j].members.push_back(x);
    sets_[j].dirty = true;
  }

 private:
  struct Set {
    std::vector<std::size_t> members;
    std::vector<TrackedRow> rows;
    std::vector<std::optional<std::vector<std::size_t>>> cache;
    bool dirty = false;
  };

  void rebuild(std::size_t j) {
    auto& s = sets_[j];
    s.rows.clear();
    for (std::size_t x : s.members) {
      SparseVector vec = vecs_[x];
      SparseVector combo{{static_cast<std::uint32_t>(x), BigInt(1)}};
      reduce_tracked(s.rows, vec, combo);
      check_invariant(!vec.empty(), "partition set lost independence");
      s.rows.push_back({std::move(vec), std::move(combo)});
    }
    std::fill(s.cache.begin(), s.cache.end(), std::nullopt);
    s.dirty = false;
  }

  const std::vector<SparseVector>& vecs_;
  std::vector<Set> sets_;
};

// Places `copies` copies of every vector into `set_count` independent sets
// by shortest augmenting paths. On failure the items reached by the last
// search span a set A with set_count * rank(A) < copies * |A|.
std::optional<std::vector<std::size_t>> partition_or_dense(const std::vector<SparseVector>& vecs,
                                                           std::size_t copies,
                                                           std::size_t set_count) {
  const std::size_t n = vecs.size();
  const std::size_t q = set_count;
  PartitionSets sets(vecs, q);
  // Node (x, j): the copy of x sitting in set j; j == q marks the new copy.
  auto node = [q](std::size_t x, std::size_t j) { return x * (q + 1) + j; };
  std::vector<std::size_t> parent(n * (q + 1));
  std::vector<char> seen(n * (q + 1));
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t c = 0; c < copies; ++c) {
      std::fill(seen.begin(), seen.end(), 0);
      std::deque<std::size_t> queue;
      const std::size_t root = node(e, q);
      seen[root] = 1;
      parent[root] = kNone;
      queue.push_back(root);
      std::size_t end_node = kNone, end_set = kNone;
      while (!queue.empty() && end_node == kNone) {
        const std::size_t u = queue.front();
        queue.pop_front();
        const std::size_t x = u / (q + 1);
        const std::size_t from = u % (q + 1);
        for (std::size_t j = 0; j < q && end_node == kNone; ++j) {
          if (j == from) continue;
          const auto& circ = sets.circuit(j, x);
          if (circ.empty()) {
            end_node = u;
            end_set = j;
            break;
          }
          for (std::size_t z : circ) {
            const std::size_t v = node(z, j);
            if (seen[v]) continue;
            seen[v] = 1;
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (end_node == kNone) {
        std::vector<char> member(n, 0);
        for (std::size_t v = 0; v < seen.size(); ++v) {
          if (seen[v]) member[v / (q + 1)] = 1;
        }
        std::vector<std::size_t> dense;
        for (std::size_t x = 0; x < n; ++x) {
          if (member[x]) dense.push_back(x);
        }
        return dense;
      }
      // Shift every item on the path one step forward.
      std::vector<std::pair<std::size_t, std::size_t>> moves;  // (node, destination set)
      std::size_t dest = end_set;
      for (std::size_t u = end_node; u != kNone; u = parent[u]) {
        moves.emplace_back(u, dest);
        dest = u % (q + 1);
      }
      for (auto [u, to] : moves) {
        if (u % (q + 1) != q) sets.remove(u % (q + 1), u / (q + 1));
      }
      for (auto [u, to] : moves) sets.add(to, u / (q + 1));
    }
  }
  return std::nullopt;
}

std::size_t rank_of(const std::vector<SparseVector>& vecs) {
  EchelonSpan span;
  for (const auto& v : vecs) span.push(v);
  return span.rank();
}

std::vector<SparseVector> pick(const std::vector<SparseVector>& vecs,
                               const std::vector<std::size_t>& idx) {
  std::vector<SparseVector> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(vecs[i]);
  return out;
}

// Inclusion-minimal dense subset, found by deleting points while the rest
// still contains a dense subset.
std::vector<std::size_t> shrink_dense(const std::vector<SparseVector>& vecs,
                                      std::vector<std::size_t> dense, const Alpha& alpha) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pos = 0; pos < dense.size(); ++pos) {
      std::vector<std::size_t> rest = dense;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      if (rest.empty()) continue;
      auto sub = dense_subset(pick(vecs, rest), alpha);
      if (sub) {
        std::vector<std::size_t> mapped;
        for (std::size_t i : *sub) mapped.push_back(rest[i]);
        dense = std::move(mapped);
        changed = true;
        break;
      }
    }
  }
  return dense;
}

struct PieceResult {
  std::vector<std::size_t> set;  // indices into the piece
  std::size_t rank = 0;
  bool least = true;
};

std::optional<PieceResult> least_dense_in_piece(const std::vector<SparseVector>& vecs,
                                                const Alpha& alpha) {
  std::size_t bound = vecs.size();
  std::vector<std::size_t> fallback;
  if (vecs.size() > kDirectSearchLimit) {
    auto dense = dense_subset(vecs, alpha);
    if (!dense) return std::nullopt;
    fallback = shrink_dense(vecs, *dense, alpha);
    bound = fallback.size();
  }
  LeastDenseSearch search(vecs, alpha);
  switch (search.run(bound)) {
    case SearchOutcome::kFound:
      return PieceResult{search.found(), search.found_rank(), true};
    case SearchOutcome::kNone:
      check_invariant(fallback.empty(), "dense subset missed by the direct search");
      return std::nullopt;
    case SearchOutcome::kBudget:
      break;
  }
  if (fallback.empty()) {
    auto dense = dense_subset(vecs, alpha);
    if (!dense) return std::nullopt;
    fallback = shrink_dense(vecs, *dense, alpha);
  }
  return PieceResult{fallback, rank_of(pick(vecs, fallback)), false};
}

// Colored points of pool \ base with their vectors reduced modulo span(base).
struct Quotient {
  ElementSet points;
  std::vector<SparseVector> residuals;
};

Quotient quotient(const ColoredStructure& s, const ElementSet& base, const ElementSet& pool) {
  for (std::size_t i : base) {
    require(i < s.size(), ErrorCode::kUnknownElement, "element index " + std::to_string(i));
  }
  Quotient q;
  EchelonSpan span = span_of(s.geometry(), base);
  for (std::size_t i : pool) {
    require(i < s.size(), ErrorCode::kUnknownElement, "element index " + std::to_string(i));
    if (!s.is_colored(i) || set_contains(base, i)) continue;
    q.points.push_back(i);
    q.residuals.push_back(span.reduce(s.geometry().vector(i)));
  }
  return q;
}

}  // namespace

Rational upper_fraction(const Alpha& alpha, std::size_t max_num, std::size_t max_den) {
  std::optional<Rational> best;
  for (std::size_t c = 1; c <= max_den; ++c) {
    BigInt r = alpha.floor_multiple(BigInt(static_cast<unsigned long>(c))) + 1;
    if (r > static_cast<unsigned long>(max_num)) continue;
    Rational candidate(r, static_cast<unsigned long>(c));
    candidate.canonicalize();
    if (!best || candidate < *best) best = candidate;
  }
  check_invariant(best.has_value(), "upper_fraction: 1/1 always qualifies");
  return *best;
}

std::optional<std::vector<std::size_t>> dense_subset(const std::vector<SparseVector>& vectors,
                                                     const Alpha& alpha) {
  std::vector<std::size_t> nonloops;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].empty()) return std::vector<std::size_t>{i};
    nonloops.push_back(i);
  }
  if (vectors.empty()) return std::nullopt;
  const std::size_t total_rank = rank_of(vectors);
  BigInt p, q;
  if (alpha.is_rational()) {
    p = alpha.num();
    q = alpha.den();
  } else {
    Rational f = upper_fraction(alpha, total_rank, vectors.size());
    p = f.get_num();
    q = f.get_den();
  }
  // Whole set dense already?
  if (q * static_cast<unsigned long>(total_rank) < p * static_cast<unsigned long>(vectors.size())) {
    return nonloops;
  }
  return partition_or_dense(vectors, p.get_ui(), q.get_ui());
}

std::optional<Violation> find_violation(const ColoredStructure& s, const ElementSet& base,
                                        const ElementSet& pool) {
  Quotient q = quotient(s, base, pool);
  const Alpha& alpha = s.alpha();
  Pieces pieces = decompose(q.residuals);
  if (!pieces.loops.empty()) {
    return Violation{{q.points[pieces.loops.front()]}, PreDimValue{0, 1}, true};
  }
  std::optional<Violation> best;
  for (const auto& piece : pieces.connected) {
    auto found = least_dense_in_piece(pick(q.residuals, piece), alpha);
    if (!found) continue;
    Violation v;
    for (std::size_t i : found->set) v.witness.push_back(q.points[piece[i]]);
    v.witness = make_set(std::move(v.witness));
    v.value = PreDimValue{static_cast<std::int64_t>(found->rank),
                          static_cast<std::int64_t>(v.witness.size())};
    v.least = found->least;
    if (!best || v.witness.size() < best->witness.size() ||
        (v.witness.size() == best->witness.size() && v.witness < best->witness)) {
      best = std::move(v);
    }
  }
  return best;
}

std::optional<PreDimValue> min_relative_delta(const ColoredStructure& s, const ElementSet& base,
                                              const ElementSet& pool) {
  Quotient q = quotient(s, base, pool);
  const Alpha& alpha = s.alpha();
  Pieces pieces = decompose(q.residuals);
  PreDimValue total{0, static_cast<std::int64_t>(pieces.loops.size())};
  for (const auto& piece : pieces.connected) {
    if (piece.size() > kMinimizeLimit) return std::nullopt;
    total += MinimumSearch(pick(q.residuals, piece), alpha).run();
  }
  return total;
}

}  // namespace bicolor
