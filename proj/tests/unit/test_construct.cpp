#include <gtest/gtest.h>

#include <bit>

#include "bicolor/closure.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/construct.hpp"
#include "bicolor/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace bicolor {
namespace {

using testing::alpha_inv_sqrt2;
using testing::alpha_two_thirds;
using testing::make_structure;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

ColoredStructure one_plain(const Alpha& alpha) { return make_structure(alpha, 1, {{"b", {1}}}); }

// delta(D'/B) >= 0 for every proper nonempty part D' of the new points, by
// subset enumeration with dense ranks.
bool proper_parts_nonnegative(const ColoredStructure& d, const ElementSet& base, const ElementSet& added) {
  const std::size_t k = added.size();
  const PreDimValue below = testing::brute_delta(d, base);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    ElementSet part = base;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) part.push_back(added[i]);
    }
    if (sign(testing::brute_delta(d, make_set(part)) - below, d.alpha()) < 0) return false;
  }
  return true;
}

TEST(GenericBasis, MomentCurvePoints) {
  const auto s = make_structure(alpha_two_thirds(), 3, {{"x", {1, 0, 0}}, {"y", {0, 1, 0}}});
  const auto ext = generic_basis_extension({}, s.all(), 2, s);
  ASSERT_EQ(ext.added.size(), 2u);
  const auto& out = ext.structure;
  EXPECT_EQ(out.element(out.index_of(ext.added[0])).vec, (std::vector<Rational>{1, 1, 0}));
  EXPECT_EQ(out.element(out.index_of(ext.added[1])).vec, (std::vector<Rational>{1, 2, 0}));
  EXPECT_TRUE(all_pass(ext.checks));
  EXPECT_TRUE(generic_basis_extension({}, s.all(), 0, s).added.empty());
}

TEST(GenericBasis, Errors) {
  const auto f = testing::make_free(alpha_two_thirds(), {{"x", false}});
  EXPECT_EQ(code_of([&] { generic_basis_extension({}, f.all(), 1, f); }), ErrorCode::kFreeBackendUnsupported);
  const auto s = make_structure(alpha_two_thirds(), 2, {{"x", {1, 0}}, {"y", {2, 0}}});
  EXPECT_EQ(code_of([&] { generic_basis_extension({}, s.all(), 1, s); }), ErrorCode::kNotIndependent);
}

TEST(GenericBasis, RandomSubsetsAreBases) {
  testing::Rng rng(51);
  int tried = 0;
  while (tried < 60) {
    const auto s = testing::random_structure(rng, alpha_two_thirds(), {.min_elements = 3, .max_dim = 5});
    // Greedy: A from a random subset, B independent over it.
    const auto a = acl_in(s.geometry(), testing::random_subset(rng, s.size(), 0.3), s.all());
    ElementSet b;
    for (std::size_t x : set_minus(s.all(), a)) {
      if (rel_rank(s.geometry(), set_union(b, {x}), a) == b.size() + 1) b.push_back(x);
    }
    if (b.empty()) continue;
    ++tried;
    const std::size_t n = 1 + tried % 4;
    const auto ext = generic_basis_extension(a, b, n, s);
    const auto& d = ext.structure;
    ElementSet pool;
    for (std::size_t x : b) pool.push_back(d.index_of(s.id(x)));
    for (const auto& id : ext.added) pool.push_back(d.index_of(id));
    ElementSet aa;
    for (std::size_t x : a) aa.push_back(d.index_of(s.id(x)));
    aa = make_set(aa);
    const std::size_t base = bareiss_rank(d.geometry(), aa);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != b.size()) continue;
      ElementSet pick = aa;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (mask >> i & 1) pick.push_back(pool[i]);
      }
      EXPECT_EQ(bareiss_rank(d.geometry(), make_set(pick)), base + b.size());
    }
  }
}

TEST(DeltaSystem, DisjointSingletonsHaveEmptyRoot) {
  const auto s = make_structure(alpha_two_thirds(), 3, {{"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"z", {0, 0, 1}}});
  const auto r = delta_system_closed_root({{0}, {1}, {2}}, 3, s);
  EXPECT_TRUE(r.root.empty());
  EXPECT_EQ(r.members.size(), 3u);
  EXPECT_EQ(r.discard_bound, 0u);
}

TEST(DeltaSystem, SharedPlainPointBecomesRoot) {
  const auto s = make_structure(Alpha::rational(1, 1), 4,
                                {{"x", {1, 0, 0, 0}}, {"y1", {0, 1, 0, 0}, true}, {"y2", {0, 0, 1, 0}, true},
                                 {"y3", {0, 0, 0, 1}, true}});
  const ElementSet x{s.index_of("x")};
  const auto r = delta_system_closed_root(
      {set_union(x, {s.index_of("y1")}), set_union(x, {s.index_of("y2")}), set_union(x, {s.index_of("y3")})}, 3, s);
  EXPECT_EQ(r.root, x);
  EXPECT_EQ(r.members.size(), 3u);
  EXPECT_EQ(r.discarded, 0u);
  // k = 2, alpha = 1: eps_2 = 1, so the bound is 2.
  EXPECT_EQ(r.discard_bound, 2u);
}

TEST(DeltaSystem, TooSmall) {
  const auto s = make_structure(alpha_two_thirds(), 2, {{"x", {1, 0}}, {"y", {0, 1}}});
  EXPECT_EQ(code_of([&] { delta_system_closed_root({{0}, {1}}, 3, s); }), ErrorCode::kFamilyTooSmall);
}

TEST(TranscendentalPatch, ThirdWindow) {
  const auto s = one_plain(alpha_inv_sqrt2());
  const auto r = transcendental_patch({}, s.all(), Rational(1, 3), s);
  EXPECT_EQ(r.pair, (ApproximationPair{2, 3}));
  EXPECT_EQ(r.added.size(), 3u);
  EXPECT_EQ(r.structure.backend().ambient_dim, 3u);  // two fresh coordinates
  EXPECT_EQ(compare(r.value, ExactValue::of(PreDimValue{2, 3}), alpha_inv_sqrt2()), std::strong_ordering::equal);
  EXPECT_TRUE(all_pass(r.checks));
  EXPECT_TRUE(r.exhaustive);
}

TEST(TranscendentalPatch, TenthWindowCheckedIndependently) {
  const auto s = one_plain(alpha_inv_sqrt2());
  const auto r = transcendental_patch({}, s.all(), Rational(1, 10), s);
  EXPECT_EQ(r.pair, (ApproximationPair{7, 10}));
  const auto& d = r.structure;
  const ElementSet base = d.set_of({"b"});
  const ElementSet added = d.set_of(r.added);
  const PreDimValue drop = testing::brute_delta(d, d.all()) - testing::brute_delta(d, base);
  EXPECT_EQ(drop, (PreDimValue{7, 10}));
  EXPECT_LT(sign(drop, alpha_inv_sqrt2()), 0);
  EXPECT_GT(sign(ExactValue::of(drop) + ExactValue::of(Rational(1, 10)), alpha_inv_sqrt2()), 0);
  EXPECT_TRUE(proper_parts_nonnegative(d, base, added));
  for (const auto& id : r.added) EXPECT_TRUE(d.is_colored(d.index_of(id)));
}

TEST(TranscendentalPatch, Errors) {
  EXPECT_EQ(code_of([] {
              const auto s = one_plain(alpha_two_thirds());
              transcendental_patch({}, s.all(), Rational(1, 3), s);
            }),
            ErrorCode::kRationalAlpha);
  const auto s = one_plain(alpha_inv_sqrt2());
  EXPECT_EQ(code_of([&] { transcendental_patch(s.all(), s.all(), Rational(1, 3), s); }), ErrorCode::kGapTooSmall);
}

TEST(FreePowerPatch, StaysBelowMu) {
  const auto s = make_structure(alpha_inv_sqrt2(), 2, {{"b1", {1, 0}}, {"b2", {0, 1}}});
  const auto r = free_power_patch({}, s.all(), Rational(1, 2), 2, s);
  EXPECT_TRUE(all_pass(r.checks));
  const auto& d = r.structure;
  const PreDimValue total = testing::brute_delta(d, d.all());
  EXPECT_GE(sign(total, alpha_inv_sqrt2()), 0);
  EXPECT_LT(sign(ExactValue::of(total) - ExactValue::of(Rational(1, 2)), alpha_inv_sqrt2()), 0);
  // Single new points never drop below B (the n = 2 condition).
  const PreDimValue below = testing::brute_delta(d, d.set_of({"b1", "b2"}));
  for (const auto& id : r.added) {
    const ElementSet one = set_union(d.set_of({"b1", "b2"}), {d.index_of(id)});
    EXPECT_GE(sign(testing::brute_delta(d, one) - below, alpha_inv_sqrt2()), 0);
  }
}

TEST(FreePowerPatch, TrivialBound) {
  const auto s = one_plain(alpha_inv_sqrt2());
  const auto r = free_power_patch({}, s.all(), Rational(1, 5), 1, s);
  EXPECT_TRUE(all_pass(r.checks));
  EXPECT_EQ(compare(r.value, ExactValue::of(Rational(1, 5)), alpha_inv_sqrt2()), std::strong_ordering::less);
}

TEST(RationalMinimal, TZero) {
  const auto s = one_plain(alpha_two_thirds());
  const auto r = rational_minimal_extension({}, s.all(), 0, s);
  EXPECT_EQ(r.pair, (ApproximationPair{1, 2}));
  EXPECT_EQ(r.added.size(), 2u);
  EXPECT_EQ(compare(r.value, ExactValue::of(Rational(-1, 3)), alpha_two_thirds()), std::strong_ordering::equal);
  const testing::DeltaTable table(r.structure);
  EXPECT_TRUE(table.minimal_pair(testing::set_to_mask(r.structure.set_of({"b"})), table.full()));
}

TEST(RationalMinimal, TOne) {
  const auto s = one_plain(alpha_two_thirds());
  const auto r = rational_minimal_extension({}, s.all(), 1, s);
  EXPECT_EQ(r.pair, (ApproximationPair{9, 14}));
  EXPECT_EQ(r.added.size(), 14u);
  EXPECT_EQ(compare(r.value, ExactValue::of(Rational(-1, 3)), alpha_two_thirds()), std::strong_ordering::equal);
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(RationalMinimal, HalfNeedsThreePoints) {
  const auto s = one_plain(testing::alpha_half());
  const auto r = rational_minimal_extension({}, s.all(), 0, s);
  EXPECT_EQ(r.pair, (ApproximationPair{1, 3}));
  EXPECT_EQ(compare(r.value, ExactValue::of(Rational(-1, 2)), testing::alpha_half()), std::strong_ordering::equal);
}

TEST(RationalZero, ThreeCopiesCancelOnePlainPoint) {
  const auto s = one_plain(alpha_two_thirds());
  const auto r = rational_zero_extension({}, s.all(), 0, s);
  EXPECT_EQ(r.copies, 3u);
  EXPECT_EQ(r.added.size(), 6u);
  EXPECT_EQ(sign(r.value, alpha_two_thirds()), 0);
  // One plain base point plus the six added: 4 - 6*(2/3) = 0.
  EXPECT_EQ(testing::brute_delta(r.structure, r.structure.all()), (PreDimValue{4, 6}));
  EXPECT_TRUE(all_pass(r.checks));
}

TEST(RationalZero, NothingToCancel) {
  // Three colored points in a plane: delta = 2 - 3*(2/3) = 0.
  const auto s = make_structure(alpha_two_thirds(), 2, {{"u", {1, 0}, true}, {"v", {0, 1}, true}, {"w", {1, 1}, true}});
  const auto r = rational_zero_extension({}, s.all(), 0, s);
  EXPECT_EQ(r.copies, 0u);
  EXPECT_TRUE(r.added.empty());
  EXPECT_EQ(r.structure.size(), 3u);
}

TEST(RationalPatches, Errors) {
  const auto s = one_plain(alpha_inv_sqrt2());
  EXPECT_EQ(code_of([&] { rational_minimal_extension({}, s.all(), 0, s); }), ErrorCode::kIrrationalAlpha);
  EXPECT_EQ(code_of([&] { rational_zero_extension({}, s.all(), 0, s); }), ErrorCode::kIrrationalAlpha);
  const auto w = testing::witness_structure();
  EXPECT_EQ(code_of([&] { rational_minimal_extension(w.set_of({"a"}), w.all(), 0, w); }), ErrorCode::kNotClosed);
}

TEST(Chain, DepthZero) {
  const auto r = minimal_pair_chain(alpha_inv_sqrt2(), 0, 4);
  EXPECT_EQ(r.levels.size(), 1u);
  EXPECT_TRUE(r.checks.empty());
}

TEST(Chain, DepthOne) {
  const auto r = minimal_pair_chain(alpha_inv_sqrt2(), 1, 8);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_EQ(r.levels[1].pair, (ApproximationPair{2, 3}));
}

TEST(Chain, DepthThreePairsAndMinimality) {
  const Alpha alpha = alpha_inv_sqrt2();
  const auto r = minimal_pair_chain(alpha, 3, 64);
  ASSERT_EQ(r.levels.size(), 4u);
  EXPECT_EQ(r.levels[1].pair, (ApproximationPair{2, 3}));
  EXPECT_EQ(r.levels[2].pair, (ApproximationPair{7, 10}));
  EXPECT_EQ(r.levels[3].pair, (ApproximationPair{12, 17}));
  EXPECT_TRUE(all_pass(r.checks));
  const auto& d = r.structure;
  for (std::size_t n = 1; n < r.levels.size(); ++n) {
    const ElementSet lower = d.set_of(r.levels[n - 1].d);
    const ElementSet upper = d.set_of(r.levels[n].d);
    const PreDimValue drop = testing::brute_delta(d, upper) - testing::brute_delta(d, lower);
    EXPECT_EQ(drop, (PreDimValue{to_int64(r.levels[n].pair.s), to_int64(r.levels[n].pair.k)}));
    // -(1 - alpha)/2^n < drop < 0.
    const ExactValue window = ExactValue{BigInt(-1), BigInt(-1), BigInt(1) << n};
    EXPECT_EQ(compare(window, ExactValue::of(drop), alpha), std::strong_ordering::less);
    EXPECT_LT(sign(drop, alpha), 0);
    if (n == 1) {
      const ElementSet added = set_minus(upper, lower);
      EXPECT_TRUE(proper_parts_nonnegative(d, lower, added));
    }
  }
  EXPECT_EQ(code_of([&] { minimal_pair_chain(alpha, 3, 10); }), ErrorCode::kBudgetExceeded);
  EXPECT_EQ(code_of([&] { minimal_pair_chain(alpha_two_thirds(), 1, 10); }), ErrorCode::kRationalAlpha);
}

}  // namespace
}  // namespace bicolor
