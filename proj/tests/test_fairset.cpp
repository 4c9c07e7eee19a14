#include <gtest/gtest.h>

#include <random>

#include "support/random_graphs.hpp"

using namespace fairbc;

namespace {

// classes given as sizes; members numbered consecutively across classes
AttributedSet make_set(std::initializer_list<std::size_t> sizes) {
  AttributedSet s(sizes.size());
  VertexId next = 0;
  std::size_t a = 0;
  for (auto n : sizes) {
    for (std::size_t i = 0; i < n; ++i) s.classes[a].push_back(next++);
    ++a;
  }
  return s;
}

AttributedSet subset(const AttributedSet& s, std::initializer_list<std::initializer_list<VertexId>> pick) {
  AttributedSet out(s.domain_size());
  std::size_t a = 0;
  for (auto cls : pick) out.classes[a++] = cls;
  return out;
}

}  // namespace

TEST(FairSet, Examples) {
  EXPECT_TRUE(is_fair_set(make_set({2, 1}), 1, 1));
  EXPECT_FALSE(is_fair_set(make_set({3, 1}), 1, 1));
  EXPECT_FALSE(is_fair_set(make_set({2, 1}), 2, 1));
}

TEST(FairSet, MissingClassIsUnfairForPositiveK) {
  EXPECT_FALSE(is_fair_set(make_set({2, 0}), 1, 5));
  EXPECT_TRUE(is_fair_set(make_set({2, 0}), 0, 2));
}

TEST(ProportionFairSet, Examples) {
  EXPECT_TRUE(is_proportion_fair_set(make_set({2, 3}), 1, 1, Ratio::parse("0.4")));
  EXPECT_FALSE(is_proportion_fair_set(make_set({1, 3}), 1, 2, Ratio::parse("0.3")));
  for (auto sizes : {std::vector<std::size_t>{2, 3}, {1, 3}, {0, 0}, {4, 4}}) {
    const auto s = make_set({sizes[0], sizes[1]});
    EXPECT_EQ(is_proportion_fair_set(s, 1, 2, Ratio{}), is_fair_set(s, 1, 2) && s.total() > 0);
  }
}

TEST(MfsCheck, Examples) {
  const auto s1 = make_set({2, 1});  // a:{0,1} b:{2}
  EXPECT_TRUE(mfs_check(s1, subset(s1, {{0}, {2}}), 1, 0));
  const auto s2 = make_set({2, 2});  // a:{0,1} b:{2,3}
  EXPECT_FALSE(mfs_check(s2, subset(s2, {{0}, {2}}), 1, 0));
  EXPECT_TRUE(mfs_check(s1, s1, 1, 1));
}

TEST(MfsCheck, RejectsNonSubset) {
  const auto s = make_set({2, 1});
  EXPECT_THROW(mfs_check(s, subset(s, {{0, 7}, {2}}), 1, 0), PreconditionViolated);
}

TEST(MfsCheck, AgreesWithOracleDefinition) {
  std::mt19937_64 rng(2024);
  std::size_t checked = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const std::size_t na = rng() % 6;
    const std::size_t nb = rng() % (11 - na);
    const auto s = make_set({na, nb});
    const std::size_t k = rng() % 3;
    const std::size_t delta = rng() % 3;
    const bool with_theta = rng() % 2;
    const std::optional<Ratio> theta =
        with_theta ? std::optional<Ratio>(std::array{Ratio{}, Ratio::of(3, 10), Ratio::of(2, 5)}[rng() % 3])
                   : std::nullopt;
    // random fair hat inside s
    AttributedSet hat(2);
    for (std::size_t a = 0; a < 2; ++a)
      for (VertexId v : s.classes[a])
        if (rng() % 2) hat.classes[a].push_back(v);
    if (!is_fair_counts(hat.counts(), k, delta, theta)) continue;
    ++checked;
    const auto maximal = oracle_maximal_fair_subsets(s, k, delta, theta);
    const bool expected = std::find(maximal.begin(), maximal.end(), hat) != maximal.end();
    EXPECT_EQ(mfs_check(s, hat, k, delta, theta), expected) << "sizes " << na << "," << nb << " hat "
                                                           << hat.classes[0].size() << "," << hat.classes[1].size();
  }
  EXPECT_GT(checked, 300u);
}

TEST(MfsCheck, AgreesWithOracleOnThreeClasses) {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 1500; ++iter) {
    const auto s = make_set({rng() % 4, rng() % 4, rng() % 4});
    const std::size_t k = rng() % 2;
    const std::size_t delta = rng() % 3;
    AttributedSet hat(3);
    for (std::size_t a = 0; a < 3; ++a)
      for (VertexId v : s.classes[a])
        if (rng() % 2) hat.classes[a].push_back(v);
    if (!is_fair_counts(hat.counts(), k, delta)) continue;
    const auto maximal = oracle_maximal_fair_subsets(s, k, delta);
    const bool expected = std::find(maximal.begin(), maximal.end(), hat) != maximal.end();
    EXPECT_EQ(mfs_check(s, hat, k, delta), expected);
  }
}

TEST(CombinationTest, Examples) {
  const auto s = make_set({3, 1});  // a:{0,1,2} b:{3}
  const auto out = combination(s, 1, 1);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], subset(s, {{0, 1}, {3}}));
  EXPECT_EQ(out[1], subset(s, {{0, 2}, {3}}));
  EXPECT_EQ(out[2], subset(s, {{1, 2}, {3}}));

  EXPECT_TRUE(combination(make_set({1, 0}), 1, 0).empty());

  const auto p = make_set({2, 5});
  const auto pro = combination(p, 1, 3, Ratio::parse("0.4"));
  ASSERT_EQ(pro.size(), 10u);
  for (const auto& x : pro) {
    EXPECT_EQ(x.total(), 5u);
    EXPECT_TRUE(is_proportion_fair_set(x, 1, 3, Ratio::parse("0.4")));
  }
}

TEST(CombinationTest, LastClassVariesFastest) {
  EXPECT_EQ(combination(make_set({3, 3}), 1, 0).size(), 1u);
  // a:{0,1,2} b:{3,4,5,6}, delta 0: C(3,3) * C(4,3)
  const auto u = combination(make_set({3, 4}), 1, 0);
  ASSERT_EQ(u.size(), 4u);
  EXPECT_EQ(u[0].classes[1], (std::vector<VertexId>{3, 4, 5}));
  EXPECT_EQ(u[3].classes[1], (std::vector<VertexId>{4, 5, 6}));
  // a:{0,1} b:{2,3,4}, delta 0: C(2,2) * C(3,2)
  const auto t = combination(make_set({2, 3}), 1, 0);
  ASSERT_EQ(t.size(), 3u);  // C(2,2) * C(3,2)
  EXPECT_EQ(t[0].classes[1], (std::vector<VertexId>{2, 3}));
  EXPECT_EQ(t[1].classes[1], (std::vector<VertexId>{2, 4}));
  EXPECT_EQ(t[2].classes[1], (std::vector<VertexId>{3, 4}));
  // a:{0,1} b:{2,3,4} c:{5,6,7}: b and c both vary, c fastest
  const auto w = combination(make_set({2, 3, 3}), 1, 0);
  ASSERT_EQ(w.size(), 9u);
  EXPECT_EQ(w[0].classes[1], w[1].classes[1]);
  EXPECT_EQ(w[1].classes[2], (std::vector<VertexId>{5, 7}));
  EXPECT_EQ(w[3].classes[1], (std::vector<VertexId>{2, 4}));
  EXPECT_EQ(w[3].classes[2], (std::vector<VertexId>{5, 6}));
}

TEST(CombinationTest, EmptyTotalEmitsNothing) {
  // k = 0 and an empty class: msize = 0 so every chosen size is 0, and an
  // empty set is never fair.
  EXPECT_TRUE(combination(make_set({3, 0}), 0, 0, Ratio::parse("0.4")).empty());
  EXPECT_TRUE(combination(make_set({3, 0}), 0, 0).empty());
  EXPECT_TRUE(combination(make_set({0, 0}), 0, 2).empty());
  // The predicate itself follows the definition: vacuously fair at k = 0.
  EXPECT_TRUE(is_fair_counts(std::vector<std::size_t>{0, 0}, 0, 2));
  EXPECT_FALSE(mfs_check_counts(std::vector<std::size_t>{0, 3}, std::vector<std::size_t>{0, 0}, 0, 0));
}

TEST(CombinationTest, OutputsAreFairAndCounted) {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 500; ++iter) {
    const auto s = make_set({rng() % 6, rng() % 6});
    const std::size_t k = rng() % 3;
    const std::size_t delta = rng() % 3;
    Combination gen(s, k, delta);
    const auto out = combination(s, k, delta);
    EXPECT_EQ(out.size(), gen.expected_count());
    for (const auto& x : out) EXPECT_TRUE(is_fair_set(x, k, delta));
  }
}

TEST(CombinationTest, Binomial) {
  EXPECT_EQ(Combination::binomial(5, 3), 10u);
  EXPECT_EQ(Combination::binomial(3, 5), 0u);
  EXPECT_EQ(Combination::binomial(0, 0), 1u);
}
