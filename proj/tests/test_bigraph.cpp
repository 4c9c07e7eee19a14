#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/random_graphs.hpp"

using namespace fairbc;

namespace {

SideAttributes labels(std::initializer_list<std::pair<const ExternalId, std::string>> l) {
  SideAttributes s;
  s.labels = l;
  return s;
}

}  // namespace

TEST(BuildGraph, SmallExample) {
  const std::vector<std::pair<ExternalId, ExternalId>> edges{{1, 7}, {1, 8}, {2, 7}};
  auto g = build_graph(edges, labels({{1, "a"}, {2, "b"}}), labels({{7, "a"}, {8, "b"}}));
  EXPECT_EQ(g.size(Side::Upper), 2u);
  EXPECT_EQ(g.size(Side::Lower), 2u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.external_id(Side::Upper, 0), 1u);
  EXPECT_EQ(g.external_id(Side::Lower, 1), 8u);
  EXPECT_EQ(g.domain(Side::Upper), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(g.attr(Side::Upper, 1), 1u);
}

TEST(BuildGraph, DuplicateEdgesCollapse) {
  const std::vector<std::pair<ExternalId, ExternalId>> edges{{1, 7}, {1, 7}};
  auto g = build_graph(edges, labels({{1, "a"}}), labels({{7, "a"}}));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.neighbors(Side::Upper, 0).size(), 1u);
}

TEST(BuildGraph, MissingAttribute) {
  const std::vector<std::pair<ExternalId, ExternalId>> edges{{1, 7}};
  try {
    build_graph(edges, labels({}), labels({{7, "a"}}));
    FAIL() << "expected MissingAttribute";
  } catch (const MissingAttribute& e) {
    EXPECT_EQ(e.id(), 1u);
    EXPECT_TRUE(e.upper());
  }
}

TEST(BuildGraph, EmptyEdgeList) {
  const std::vector<std::pair<ExternalId, ExternalId>> edges;
  EXPECT_THROW(build_graph(edges, labels({}), labels({})), EmptyGraph);
}

TEST(BuildGraph, SidesHaveSeparateIdNamespaces) {
  const std::vector<std::pair<ExternalId, ExternalId>> edges{{3, 3}, {4, 3}};
  auto g = build_graph(edges, labels({{3, "a"}, {4, "a"}}), labels({{3, "b"}}));
  EXPECT_EQ(g.size(Side::Upper), 2u);
  EXPECT_EQ(g.size(Side::Lower), 1u);
  EXPECT_EQ(g.domain(Side::Lower), (std::vector<std::string>{"b"}));
}

TEST(BuildGraph, OrderInsensitive) {
  std::vector<std::pair<ExternalId, ExternalId>> edges{{5, 1}, {2, 9}, {5, 9}, {7, 1}, {2, 4}, {7, 4}};
  auto up = labels({{2, "x"}, {5, "y"}, {7, "x"}});
  auto lo = labels({{1, "p"}, {4, "q"}, {9, "p"}});
  const auto ref = build_graph(edges, up, lo);
  std::mt19937 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(edges.begin(), edges.end(), rng);
    const auto g = build_graph(edges, up, lo);
    for (Side s : {Side::Upper, Side::Lower}) {
      ASSERT_EQ(g.size(s), ref.size(s));
      for (VertexId v = 0; v < g.size(s); ++v) {
        EXPECT_TRUE(std::ranges::equal(g.neighbors(s, v), ref.neighbors(s, v)));
        EXPECT_EQ(g.attr(s, v), ref.attr(s, v));
        EXPECT_EQ(g.external_id(s, v), ref.external_id(s, v));
      }
    }
  }
}

TEST(Graph, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = testkit::harness_graph(seed, 2, 10);
    std::size_t up = 0;
    std::size_t lo = 0;
    for (VertexId u = 0; u < g.size(Side::Upper); ++u) {
      up += g.degree(Side::Upper, u);
      for (VertexId v : g.neighbors(Side::Upper, u)) {
        auto back = g.neighbors(Side::Lower, v);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), u));
      }
    }
    for (VertexId v = 0; v < g.size(Side::Lower); ++v) lo += g.degree(Side::Lower, v);
    EXPECT_EQ(up, g.edge_count());
    EXPECT_EQ(lo, g.edge_count());
  }
}

TEST(AttributeDegree, CountsAndLiveness) {
  // u adjacent to v0(a), v1(b), v2(a)
  const std::vector<std::pair<VertexId, VertexId>> edges{{0, 0}, {0, 1}, {0, 2}};
  auto g = AttributedBipartiteGraph::from_indices(2, 3, edges, {0, 0}, {0, 1, 0}, 1, 2);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 0}, 0), 2u);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 0}, 1), 1u);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 1}, 0), 0u);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 1}, 1), 0u);
  g.remove(Side::Lower, 2);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 0}, 0), 1u);
  EXPECT_EQ(g.degree(Side::Upper, 0), 2u);
  g.remove(Side::Upper, 0);
  EXPECT_EQ(attribute_degree(g, {Side::Upper, 0}, 1), 0u);
}

TEST(AttributeDegree, SumsToDegree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = testkit::harness_graph(seed, 3, 9);
    if (g.size(Side::Lower) > 0) g.remove(Side::Lower, 0);
    for (Side s : {Side::Upper, Side::Lower})
      for (VertexId v = 0; v < g.size(s); ++v) {
        std::size_t sum = 0;
        for (AttrId a = 0; a < g.domain_size(opposite(s)); ++a) sum += attribute_degree(g, {s, v}, a);
        EXPECT_EQ(sum, g.degree(s, v));
      }
  }
}

TEST(CommonNeighbors, Examples) {
  // K_{2,3}
  const auto k = testkit::k23_fixture();
  const std::vector<VertexRef> both{{Side::Upper, 0}, {Side::Upper, 1}};
  EXPECT_EQ(common_neighbors(k, both), (std::vector<VertexId>{0, 1, 2}));
  const std::vector<VertexRef> one{{Side::Lower, 1}};
  EXPECT_EQ(common_neighbors(k, one), (std::vector<VertexId>{0, 1}));

  // v0~{u0,u1}, v1~{u1,u2}
  const std::vector<std::pair<VertexId, VertexId>> edges{{0, 0}, {1, 0}, {1, 1}, {2, 1}};
  auto g = AttributedBipartiteGraph::from_indices(3, 2, edges, {0, 0, 0}, {0, 0}, 1, 1);
  const std::vector<VertexRef> pair{{Side::Lower, 0}, {Side::Lower, 1}};
  EXPECT_EQ(common_neighbors(g, pair), (std::vector<VertexId>{1}));
}

TEST(CommonNeighbors, Errors) {
  const auto k = testkit::k23_fixture();
  EXPECT_THROW(common_neighbors(k, std::span<const VertexRef>{}), EmptySet);
  const std::vector<VertexRef> mixed{{Side::Upper, 0}, {Side::Lower, 0}};
  EXPECT_THROW(common_neighbors(k, mixed), PreconditionViolated);
}

TEST(CommonNeighbors, UnionIsIntersection) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = testkit::harness_graph(seed, 4, 10);
    const auto n = g.size(Side::Lower);
    std::vector<VertexRef> s1;
    std::vector<VertexRef> s2;
    for (VertexId v = 0; v < n; ++v) (rng() % 2 ? s1 : s2).push_back({Side::Lower, v});
    if (s1.empty() || s2.empty()) continue;
    auto all = s1;
    all.insert(all.end(), s2.begin(), s2.end());
    const auto a = common_neighbors(g, s1);
    const auto b = common_neighbors(g, s2);
    std::vector<VertexId> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    EXPECT_EQ(common_neighbors(g, all), both);
  }
}

TEST(Graph, CopiesHaveIndependentLiveness) {
  const auto g = testkit::k23_fixture();
  auto copy = g;
  copy.remove(Side::Lower, 0);
  EXPECT_TRUE(g.is_alive(Side::Lower, 0));
  EXPECT_FALSE(copy.is_alive(Side::Lower, 0));
  EXPECT_EQ(copy.alive_total(), 4u);
  copy.restore_all();
  EXPECT_EQ(copy.alive_total(), 5u);
}

TEST(RatioTest, ParseAndCompare) {
  EXPECT_EQ(Ratio::parse("0.4"), Ratio::of(2, 5));
  EXPECT_EQ(Ratio::parse("1/3").str(), "1/3");
  EXPECT_EQ(Ratio::parse("0.30").str(), "0.3");
  EXPECT_EQ(Ratio::parse("0").str(), "0");
  EXPECT_THROW(Ratio::parse("-1"), InvalidConfig);
  EXPECT_THROW(Ratio::parse("x"), InvalidConfig);
  EXPECT_TRUE(Ratio::of(1, 3) < Ratio::of(2, 5));
}

TEST(Params, ThetaRange) {
  FairnessParams p;
  p.theta = Ratio::of(1, 2);
  EXPECT_NO_THROW(p.validate());
  p.theta = Ratio::of(3, 5);
  EXPECT_THROW(p.validate(), InvalidConfig);
  p.model = Model::PSSFBC;
  EXPECT_TRUE(p.effective_theta().has_value());
  p.model = Model::SSFBC;
  EXPECT_FALSE(p.effective_theta().has_value());
}
