#include <gtest/gtest.h>

#include "bicolor/amalgam.hpp"
#include "bicolor/colored.hpp"
#include "bicolor/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace bicolor {
namespace {

using testing::make_structure;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

EmbeddingMap identity(const ColoredStructure& s) {
  EmbeddingMap f;
  for (const auto& e : s.elements()) f[e.id] = e.id;
  return f;
}

TEST(FreeAmalgam, OverEverythingIsTheBase) {
  const auto w = testing::witness_structure();
  const auto r = free_amalgam(w, w, {"a", "b1", "b2"}, identity(w));
  EXPECT_EQ(r.structure.size(), 3u);
  EXPECT_EQ(rank(r.structure.geometry(), r.structure.all()), 2u);
  EXPECT_TRUE(all_pass(verify_amalgam(r, w, w)));
}

TEST(FreeAmalgam, TwoColoredPointsOverNothing) {
  const Alpha one = Alpha::rational(1, 1);
  const auto m1 = make_structure(one, 1, {{"x", {1}, true}});
  const auto m2 = make_structure(one, 1, {{"y", {1}, true}});
  const auto r = free_amalgam(m1, m2, {}, {});
  const auto& m = r.structure;
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(rank(m.geometry(), m.all()), 2u);
  EXPECT_EQ(sign(delta(m, m.all()), one), 0);
  EXPECT_TRUE(verify_strong(r.left, m1, m));
  EXPECT_TRUE(verify_strong(r.right, m2, m));
  const testing::DeltaTable table(m);
  EXPECT_TRUE(table.k_plus());
}

TEST(FreeAmalgam, RankIdentityOverAPoint) {
  const Alpha half = testing::alpha_half();
  const auto m1 = make_structure(half, 2, {{"a", {1, 0}}, {"b1", {0, 1}, true}, {"b2", {1, 1}, true}});
  const auto m2 = make_structure(half, 2, {{"a", {1, 0}}, {"w", {0, 1}}});
  const auto r = free_amalgam(m1, m2, {"a"}, {{"a", "a"}});
  const auto checks = verify_amalgam(r, m1, m2);
  EXPECT_TRUE(all_pass(checks));
  EXPECT_EQ(bareiss_rank(r.structure.geometry(), r.structure.all()), 3u);
  EXPECT_EQ(r.right.at("w"), "w");
}

TEST(FreeAmalgam, ClashingIdsArePrefixed) {
  const Alpha half = testing::alpha_half();
  const auto m1 = make_structure(half, 1, {{"x", {1}}});
  const auto m2 = make_structure(half, 1, {{"x", {1}, true}});
  const auto r = free_amalgam(m1, m2, {}, {});
  EXPECT_EQ(r.left.at("x"), "L.x");
  EXPECT_EQ(r.right.at("x"), "R.x");
  EXPECT_TRUE(r.structure.is_colored(r.structure.index_of("R.x")));
}

TEST(FreeAmalgam, Errors) {
  const auto w = testing::witness_structure();
  EXPECT_EQ(code_of([&] { free_amalgam(w, w, {"a"}, {{"a", "a"}}); }), ErrorCode::kNotClosed);
  const auto other = make_structure(testing::alpha_half(), 1, {{"a", {1}}});
  EXPECT_EQ(code_of([&] { free_amalgam(w, other, {}, {}); }), ErrorCode::kAlphaMismatch);
  const auto colored = make_structure(testing::alpha_two_thirds(), 2, {{"a", {1, 0}, true}});
  const auto plain = make_structure(testing::alpha_two_thirds(), 2, {{"a", {1, 0}}});
  EXPECT_EQ(code_of([&] { free_amalgam(colored, plain, {"a"}, {{"a", "a"}}); }), ErrorCode::kMatchInvalid);
  const auto spanned = make_structure(testing::alpha_two_thirds(), 1, {{"a", {1}}, {"b", {2}}});
  EXPECT_EQ(code_of([&] { free_amalgam(spanned, plain, {"a"}, {{"a", "a"}}); }), ErrorCode::kNotClosed);
}

TEST(VerifyStrong, Examples) {
  const auto w = testing::witness_structure();
  EXPECT_TRUE(verify_strong(identity(w), w, w));
  const auto a = w.restrict(w.set_of({"a"}));
  EXPECT_FALSE(verify_strong({{"a", "a"}}, a, w));
  const auto empty = w.restrict({});
  EXPECT_TRUE(verify_strong({}, empty, w));
}

TEST(VerifyFree, Examples) {
  const auto s = make_structure(testing::alpha_half(), 2, {{"p", {1, 0}}, {"q", {2, 0}}, {"r", {0, 1}}});
  EXPECT_TRUE(verify_free({0, 2}, {0}, {0}, s));
  EXPECT_FALSE(verify_free({0}, {1}, {}, s));
  EXPECT_TRUE(verify_free({0}, {2}, {}, s));
}

TEST(AmalgamProperty, RandomCasesVerify) {
  testing::Rng rng(61);
  for (int i = 0; i < 120; ++i) {
    const Alpha& alpha = testing::sample_alphas()[i % 4];
    const auto c = testing::random_amalgam_case(rng, alpha);
    const auto r = free_amalgam(c.m1, c.m2, c.base, c.match);
    const auto checks = verify_amalgam(r, c.m1, c.m2);
    for (const auto& check : checks) EXPECT_TRUE(check.pass) << check.name << " case " << i;
    const auto& m = r.structure;
    const std::size_t r0 = bareiss_rank(c.m1.geometry(), c.m1.set_of(c.base));
    EXPECT_EQ(bareiss_rank(m.geometry(), m.all()) + r0,
              bareiss_rank(c.m1.geometry(), c.m1.all()) + bareiss_rank(c.m2.geometry(), c.m2.all()));
    if (m.size() <= 12) EXPECT_TRUE(testing::DeltaTable(m).k_plus()) << "case " << i;
  }
}

}  // namespace
}  // namespace bicolor
