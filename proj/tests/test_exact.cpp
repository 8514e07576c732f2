#include "bihole/exact.hpp"
#include "bihole/generators.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace bihole {
namespace {

using testing::complete;
using testing::cycle;
using testing::edgeless;
using testing::matching;

void expect_certificate(const BipartiteGraph& g, const ExactResult& r) {
  EXPECT_TRUE(is_bihole(g, r.witness));
  EXPECT_EQ(r.witness.order(), r.order);
}

TEST(ComplementSide, Examples) {
  EXPECT_TRUE(complement_side(complete(3), std::vector<Vertex>{0}).empty());
  EXPECT_EQ(complement_side(edgeless(3), std::vector<Vertex>{0, 1, 2}), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(complement_side(matching(3), std::vector<Vertex>{0, 1}), (std::vector<Vertex>{2}));
}

TEST(BruteForceOracle, Examples) {
  EXPECT_EQ(brute_force_oracle(complete(3)).order, 0U);
  EXPECT_EQ(brute_force_oracle(edgeless(3)).order, 3U);
  EXPECT_EQ(brute_force_oracle(matching(3)).order, 1U);
  EXPECT_EQ(brute_force_oracle(cycle(4)).order, 1U);
  const auto r = brute_force_oracle(gen_extremal_paths(2));
  EXPECT_EQ(r.order, 5U);
  EXPECT_TRUE(r.optimal);
  expect_certificate(gen_extremal_paths(2), r);
}

TEST(BruteForceOracle, RefusesLargeInputs) {
  EXPECT_THROW(brute_force_oracle(edgeless(21)), capacity_error);
  EXPECT_NO_THROW(brute_force_oracle(edgeless(20)));
}

TEST(BruteForceOracle, MatchesNaiveSubsetLoop) {
  std::mt19937 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t na = 1 + rep % 9, nb = 1 + (rep / 9) % 9;
    const auto g = testing::random_graph(rng, na, nb, 0.35);
    const auto r = brute_force_oracle(g);
    EXPECT_EQ(r.order, testing::naive_max_order(g));
    expect_certificate(g, r);
  }
}

TEST(ReductionSoundness, SubsetFormulaEqualsPairEnumeration) {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 1 + rep % 8;
    const auto g = testing::random_graph(rng, n, n, 0.1 + 0.1 * (rep % 6));
    EXPECT_EQ(testing::naive_max_order(g), testing::naive_pair_order(g)) << "rep " << rep;
  }
}

TEST(MaxBihole, Examples) {
  EXPECT_EQ(max_bihole(gen_extremal_paths(2)).order, 5U);
  EXPECT_EQ(max_bihole(cycle(4)).order, 1U);
  const auto e = max_bihole(edgeless(7));
  EXPECT_EQ(e.order, 7U);
  EXPECT_TRUE(e.optimal);
  EXPECT_EQ(e.nodes_explored, 0U);
  EXPECT_EQ(max_bihole(complete(5)).order, 0U);
}

TEST(MaxBihole, EmptyGraph) {
  const auto g = build_graph(0, 0, {});
  const auto r = max_bihole(g);
  EXPECT_EQ(r.order, 0U);
  EXPECT_TRUE(r.optimal);
}

TEST(MaxBihole, OracleEquivalenceOnRandomGraphs) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int rep = 0; rep < 600; ++rep) {
    const std::size_t n = 1 + rep % 10;
    const std::size_t nb = rep % 3 == 0 ? 1 + (rep / 3) % 10 : n;
    const double q = 0.05 + 0.05 * (rep % 10);
    const auto g = testing::random_graph(rng, n, nb, q);
    const auto oracle = testing::naive_max_order(g);
    ExactOptions plain;
    plain.decompose = false;
    const auto a = max_bihole(g, plain);
    const auto b = max_bihole(g);
    EXPECT_EQ(a.order, oracle);
    EXPECT_EQ(b.order, oracle);
    EXPECT_TRUE(a.optimal);
    EXPECT_TRUE(b.optimal);
    expect_certificate(g, a);
    expect_certificate(g, b);
    ++checked;
  }
  EXPECT_GE(checked, 500);
}

TEST(MaxBihole, DecompositionOnSparseGraphs) {
  // sparse graphs split into many components; small enumeration limits force mixed paths
  std::mt19937 rng(99);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 6 + rep % 13;
    const auto g = testing::random_bounded(rng, n, 2);
    ExactOptions opts;
    opts.enumeration_limit = rep % 4;
    const auto r = max_bihole(g, opts);
    EXPECT_EQ(r.order, brute_force_oracle(g).order);
    expect_certificate(g, r);
  }
}

TEST(MaxBihole, ThreadedMatchesSingle) {
  std::mt19937 rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const auto g = testing::random_graph(rng, 16, 16, 0.2);
    ExactOptions one, four;
    four.threads = 4;
    EXPECT_EQ(max_bihole(g, one).order, max_bihole(g, four).order);
  }
}

TEST(MaxBihole, SingleThreadedIsReproducible) {
  const auto g = gen_random_edges(26, 70, 4);
  const auto a = max_bihole(g);
  const auto b = max_bihole(g);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.witness.s, b.witness.s);
  EXPECT_EQ(a.witness.t, b.witness.t);
}

TEST(MaxBihole, WitnessUsesLowestComplementIndices) {
  const auto g = build_graph(3, 4, {{0, 0}, {1, 0}, {2, 0}, {2, 1}});
  const auto r = max_bihole(g);
  // S = {0,1} leaves B-vertices {1,2,3} free; nothing reaches 3
  EXPECT_EQ(r.order, 2U);
  EXPECT_EQ(r.order, testing::naive_max_order(g));
  const auto t = complement_side(g, r.witness.s);
  EXPECT_EQ(r.witness.t, std::vector<Vertex>(t.begin(), t.begin() + 2));
}

TEST(MaxBihole, BudgetExhaustion) {
  const auto g = gen_random_edges(30, 120, 8);
  ExactOptions tiny;
  tiny.node_budget = 5;
  tiny.decompose = false;
  const auto r = max_bihole(g, tiny);
  EXPECT_FALSE(r.optimal);
  EXPECT_LE(r.nodes_explored, 5U);
  expect_certificate(g, r);
  const auto full = max_bihole(g);
  EXPECT_TRUE(full.optimal);
  EXPECT_LE(r.order, full.order);
}

TEST(MaxBihole, WarmStartAndTarget) {
  const auto g = gen_random_edges(20, 40, 2);
  const auto full = max_bihole(g);
  ExactOptions warm;
  warm.initial = full.witness;
  const auto w = max_bihole(g, warm);
  EXPECT_EQ(w.order, full.order);
  EXPECT_TRUE(w.optimal);
  EXPECT_LE(w.nodes_explored, full.nodes_explored);

  ExactOptions bogus;
  bogus.initial = Bihole{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
  if (!is_bihole(g, *bogus.initial)) { EXPECT_EQ(max_bihole(g, bogus).order, full.order); }

  ExactOptions target;
  target.target = 1;
  const auto t = max_bihole(g, target);
  EXPECT_GE(t.order, 1U);
  expect_certificate(g, t);
}

TEST(MaxBihole, EdgeInsertionNeverIncreasesOrder) {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 3 + rep % 9;
    const auto g = testing::random_graph(rng, n, n, 0.25);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    auto edges = g.edges();
    edges.push_back({pick(rng), pick(rng)});
    const auto h = build_graph(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
    EXPECT_LE(max_bihole(h).order, max_bihole(g).order);
  }
}

TEST(MaxBihole, SideSymmetry) {
  std::mt19937 rng(43);
  for (int rep = 0; rep < 120; ++rep) {
    const auto g = testing::random_graph(rng, 4 + rep % 12, 4 + (rep * 7) % 12, 0.2);
    EXPECT_EQ(max_bihole(g).order, max_bihole(g.swapped()).order);
  }
}

TEST(MaxBihole, ExtremalPathsFour) {
  const auto g = gen_extremal_paths(4);
  const auto r = max_bihole(g);
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.order, 19U);
  expect_certificate(g, r);
}

TEST(MaxBihole, LargerThanOracleCap) {
  // 25 disjoint K_{2,2}: s chosen A-vertices touch at least ceil(s/2) blocks and
  // leave 50 - 2 ceil(s/2) free B-vertices, so the best order is 24.
  std::vector<Edge> edges;
  for (Vertex k = 0; k < 25; ++k)
    for (Vertex x = 0; x < 2; ++x)
      for (Vertex y = 0; y < 2; ++y) edges.push_back({2 * k + x, 2 * k + y});
  const auto g = build_graph(50, 50, edges);
  const auto r = max_bihole(g);
  EXPECT_EQ(r.order, 24U);
  EXPECT_TRUE(r.optimal);
}

}  // namespace
}  // namespace bihole
