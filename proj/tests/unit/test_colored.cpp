#include <gtest/gtest.h>

#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace bicolor {
namespace {

using testing::make_structure;

TEST(Delta, Examples) {
  const auto w = testing::witness_structure();
  EXPECT_EQ(delta(w, {}), (PreDimValue{0, 0}));
  EXPECT_EQ(delta(w, w.all()), (PreDimValue{2, 2}));
  EXPECT_EQ(delta(w, w.set_of({"b1", "b2"}), w.set_of({"a"})), (PreDimValue{1, 2}));
}

TEST(KPlus, AllPlainIsIn) {
  const auto s = make_structure(testing::alpha_inv_sqrt2(), 2, {{"x", {1, 0}}, {"y", {2, 0}}, {"z", {1, 1}}});
  EXPECT_TRUE(in_k_plus(s));
}

TEST(KPlus, ParallelColoredPairFailsAtTwoThirds) {
  const auto s = make_structure(testing::alpha_two_thirds(), 2, {{"u", {0, 1}, true}, {"v", {0, 2}, true}});
  EXPECT_FALSE(in_k_plus(s));
  ASSERT_TRUE(k_plus_witness(s).has_value());
  EXPECT_EQ(*k_plus_witness(s), (ElementSet{0, 1}));
  EXPECT_EQ(delta(s, s.all()), (PreDimValue{1, 2}));
  try {
    require_k_plus(s, "test");
    FAIL() << "expected NotInKPlus";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInKPlus);
  }
}

TEST(KPlus, WitnessStructureIsIn) { EXPECT_TRUE(in_k_plus(testing::witness_structure())); }

TEST(KPlus, ParallelColoredPairAllowedAtHalf) {
  const auto s = make_structure(testing::alpha_half(), 2, {{"u", {0, 1}, true}, {"v", {0, 2}, true}});
  EXPECT_TRUE(in_k_plus(s));  // 1 - 2/2 = 0
}

TEST(Embedding, IdentityAndScaling) {
  const auto w = testing::witness_structure();
  EmbeddingMap id;
  for (const auto& e : w.elements()) id[e.id] = e.id;
  EXPECT_TRUE(is_lp_embedding(id, w, w));
  const auto one = make_structure(testing::alpha_half(), 1, {{"a", {1}, true}});
  const auto two = make_structure(testing::alpha_half(), 1, {{"a2", {2}, true}});
  EXPECT_TRUE(is_lp_embedding({{"a", "a2"}}, one, two));
}

TEST(Embedding, GainedDependencyIsRejected) {
  const auto pair = make_structure(testing::alpha_half(), 2, {{"x", {1, 0}}, {"y", {0, 1}}});
  const auto parallel = make_structure(testing::alpha_half(), 2, {{"p", {1, 0}}, {"q", {2, 0}}});
  EXPECT_FALSE(is_lp_embedding({{"x", "p"}, {"y", "q"}}, pair, parallel));
}

TEST(Embedding, ScalarRelationsMustMatchExactly) {
  // b = a + 2c on both sides even though a is doubled on the right.
  const auto s = make_structure(testing::alpha_half(), 2, {{"a", {1, 0}}, {"b", {1, 2}}, {"c", {0, 1}}});
  const auto t = make_structure(testing::alpha_half(), 2, {{"a", {2, 0}}, {"b", {2, 2}}, {"c", {0, 1}}});
  const auto skew = make_structure(testing::alpha_half(), 2, {{"a", {2, 0}}, {"b", {1, 2}}, {"c", {0, 1}}});
  const EmbeddingMap f{{"a", "a"}, {"b", "b"}, {"c", "c"}};
  EXPECT_TRUE(is_lp_embedding(f, s, t));
  EXPECT_FALSE(is_lp_embedding(f, s, skew));
}

TEST(Embedding, ColorMustBePreserved) {
  const auto s = make_structure(testing::alpha_half(), 1, {{"a", {1}, true}});
  const auto t = make_structure(testing::alpha_half(), 1, {{"a", {1}, false}});
  EXPECT_FALSE(is_lp_embedding({{"a", "a"}}, s, t));
}

TEST(WeakIso, Examples) {
  const auto s = make_structure(testing::alpha_half(), 2, {{"x", {1, 0}, true}, {"y", {0, 1}, true}, {"z", {1, 1}}});
  EmbeddingMap id{{"x", "x"}, {"y", "y"}, {"z", "z"}};
  EXPECT_TRUE(is_weak_iso(id, s, s.all(), s, s.all()));
  EXPECT_TRUE(is_weak_iso({{"x", "y"}}, s, {0}, s, {1}));
  EXPECT_FALSE(is_weak_iso({{"x", "z"}}, s, {0}, s, {2}));
}

TEST(KPlusProperty, MatchesFullEnumeration) {
  testing::Rng rng(31);
  std::size_t in = 0, out = 0;
  for (int i = 0; i < 400; ++i) {
    const Alpha& alpha = testing::sample_alphas()[i % 4];
    const auto s = testing::random_structure(rng, alpha);
    const testing::DeltaTable table(s);
    EXPECT_EQ(in_k_plus(s), table.k_plus()) << "structure " << i;
    (table.k_plus() ? in : out)++;
    if (auto w = k_plus_witness(s)) EXPECT_LT(sign(table[testing::set_to_mask(*w)], alpha), 0);
  }
  // Both verdicts must actually occur for the comparison to mean anything.
  EXPECT_GT(in, 40u);
  EXPECT_GT(out, 40u);
}

TEST(KPlusProperty, WitnessIsLeastBySize) {
  testing::Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const Alpha& alpha = testing::sample_alphas()[i % 4];
    const auto s = testing::random_structure(rng, alpha);
    const auto w = k_plus_witness(s);
    if (!w) continue;
    const testing::DeltaTable table(s);
    for (std::uint64_t mask = 1; mask <= table.full(); ++mask) {
      if (sign(table[mask], alpha) < 0) {
        EXPECT_LE(w->size(), testing::mask_to_set(mask).size());
      }
    }
  }
}

TEST(DeltaProperty, AgreesWithBareissAndIsSubmodular) {
  testing::Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const Alpha& alpha = testing::sample_alphas()[i % 4];
    const auto s = testing::random_structure(rng, alpha);
    const auto a = testing::random_subset(rng, s.size());
    const auto b = testing::random_subset(rng, s.size());
    EXPECT_EQ(delta(s, a), testing::brute_delta(s, a));
    const PreDimValue lhs = delta(s, set_union(a, b)) + delta(s, set_intersection(a, b));
    EXPECT_LE(testing::cmp(lhs, delta(s, a) + delta(s, b), alpha), 0);
  }
}

}  // namespace
}  // namespace bicolor
