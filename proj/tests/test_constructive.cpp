#include "bihole/constructive.hpp"
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

void expect_sound(const BipartiteGraph& g, const GuaranteedBihole& r) {
  EXPECT_TRUE(is_bihole(g, r.bihole)) << r.algorithm;
  EXPECT_TRUE(r.meets_guarantee()) << r.algorithm << " order " << r.bihole.order() << " guarantee "
                                   << to_string(r.guarantee);
  EXPECT_TRUE(replay_trace(g, r.trace)) << r.algorithm;
}

TEST(Delta1, Examples) {
  const auto k2s = matching(3);
  const auto r = bihole_delta1(k2s);
  EXPECT_EQ(r.guarantee, Rational(1));
  EXPECT_GE(r.bihole.order(), 1U);
  expect_sound(k2s, r);

  // K_{1,3} centred at b0, plus isolated b1, b2 (A has 3 leaves)
  const auto star = build_graph(3, 3, {{0, 0}, {1, 0}, {2, 0}});
  const auto s = bihole_delta1(star);
  EXPECT_EQ(s.bihole.order(), 2U);
  EXPECT_EQ(brute_force_oracle(star).order, 2U);
  expect_sound(star, s);

  const auto iso = edgeless(2);
  EXPECT_EQ(bihole_delta1(iso).bihole.order(), 2U);
}

TEST(Delta1, Preconditions) {
  EXPECT_THROW(bihole_delta1(cycle(3)), precondition_error);
  EXPECT_THROW(bihole_delta1(build_graph(2, 3, {})), precondition_error);
}

TEST(Delta1, RandomCorpus) {
  std::mt19937 rng(1);
  for (int rep = 0; rep < 300; ++rep) {
    const auto g = testing::random_bounded(rng, 1 + rep % 30, 1);
    const auto r = bihole_delta1(g);
    expect_sound(g, r);
    if (g.n_a() <= 16) { EXPECT_LE(r.bihole.order(), max_bihole(g).order); }
  }
}

TEST(TreeSplit, SmallPaths) {
  // b0 - a0 - b1
  const auto p1 = build_graph(1, 2, {{0, 0}, {0, 1}});
  const auto c1 = components(p1).front();
  auto s = tree_split_independent(p1, c1, 1);
  EXPECT_EQ(s.a, (std::vector<Vertex>{0}));
  EXPECT_TRUE(s.b.empty());
  s = tree_split_independent(p1, c1, 0);
  EXPECT_TRUE(s.a.empty());
  EXPECT_EQ(s.b.size(), 1U);

  // b0 a0 b1 a1 b2
  const auto p2 = build_graph(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  const auto c2 = components(p2).front();
  s = tree_split_independent(p2, c2, 1);
  ASSERT_EQ(s.a.size(), 1U);
  ASSERT_EQ(s.b.size(), 1U);
  EXPECT_FALSE(p2.adjacent(s.a[0], s.b[0]));
}

TEST(TreeSplit, Preconditions) {
  const auto c = cycle(3);
  EXPECT_THROW(tree_split_independent(c, components(c).front(), 1), precondition_error);
  const auto p1 = build_graph(1, 2, {{0, 0}, {0, 1}});
  EXPECT_THROW(tree_split_independent(p1, components(p1).front(), 2), input_error);
  const auto leafy = build_graph(2, 3, {{0, 0}, {1, 0}, {1, 1}});
  EXPECT_THROW(tree_split_independent(leafy, components(leafy).front(), 1), precondition_error);
}

// random tree on B-nodes where every A-vertex subdivides one tree edge
BipartiteGraph random_subdivided_tree(std::mt19937& rng, std::size_t a_count) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < a_count; ++a) {
    std::uniform_int_distribution<Vertex> parent(0, a);
    edges.push_back({a, parent(rng)});
    edges.push_back({a, a + 1});
  }
  // shuffle B labels so leaves are not always the highest index
  std::vector<Vertex> perm(a_count + 1);
  for (Vertex b = 0; b <= a_count; ++b) perm[b] = b;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& e : edges) e.b = perm[e.b];
  return build_graph(static_cast<std::int64_t>(a_count), static_cast<std::int64_t>(a_count + 1), edges);
}

TEST(TreeSplit, EverySplitOnRandomTrees) {
  std::mt19937 rng(8);
  for (int rep = 0; rep < 60; ++rep) {
    const auto g = random_subdivided_tree(rng, 1 + rep % 15);
    const auto c = components(g).front();
    for (std::size_t i = 0; i <= c.a_size(); ++i) {
      const auto s = tree_split_independent(g, c, i);
      EXPECT_EQ(s.a.size(), i);
      EXPECT_EQ(s.b.size(), c.a_size() - i);
      for (auto a : s.a)
        for (auto b : s.b) EXPECT_FALSE(g.adjacent(a, b));
    }
  }
}

TEST(TreeSplit, ExtremalPathComponent) {
  const auto g = gen_extremal_paths(2);
  for (const auto& c : components(g)) {
    if (c.b_size() == 0) continue;
    const auto s = tree_split_independent(g, c, 2);
    EXPECT_EQ(s.a.size(), 2U);
    EXPECT_EQ(s.b.size(), 2U);
    EXPECT_TRUE(testing::naive_is_bihole(g, s.a, s.b));
  }
}

TEST(Profile012, Examples) {
  const auto ext = gen_extremal_paths(2);
  const auto r = bihole_profile012(ext);
  EXPECT_EQ(r.guarantee, Rational(15, 4));
  EXPECT_GE(r.bihole.order(), 4U);
  EXPECT_LE(r.bihole.order(), 5U);
  expect_sound(ext, r);

  const auto e4 = edgeless(4);
  const auto re = bihole_profile012(e4);
  EXPECT_EQ(re.bihole.order(), 4U);
  EXPECT_EQ(re.guarantee, Rational(5, 4));

  const auto c8 = cycle(8);
  const auto rc = bihole_profile012(c8);
  EXPECT_GE(rc.bihole.order(), 3U);
  expect_sound(c8, rc);
}

TEST(Profile012, ExtremalFour) {
  const auto g = gen_extremal_paths(4);
  const auto r = bihole_profile012(g);
  EXPECT_EQ(r.guarantee, Rational(69, 4));
  EXPECT_GE(r.bihole.order(), 19U);
  EXPECT_LE(r.bihole.order(), 19U);
  expect_sound(g, r);
}

TEST(Profile012, HandlesBothParityCases) {
  // four isolated A plus trees of A-sizes (1,2) hit the different-parity case,
  // (1,1,3,3) the same-parity case
  for (const std::vector<std::size_t>& sizes :
       {std::vector<std::size_t>{1, 2, 5, 7}, std::vector<std::size_t>{1, 1, 3, 3}, std::vector<std::size_t>{2, 2, 2, 4}}) {
    std::vector<Edge> edges;
    Vertex a = 4, b = 0;
    for (auto k : sizes) {
      Vertex left = b++;
      for (std::size_t j = 0; j < k; ++j) {
        edges.push_back({a, left});
        edges.push_back({a, b});
        left = b++;
        ++a;
      }
    }
    const auto n = static_cast<std::int64_t>(a);
    ASSERT_EQ(static_cast<std::int64_t>(b), n);
    const auto g = build_graph(n, n, edges);
    const auto r = bihole_profile012(g);
    expect_sound(g, r);
    bool saw_case = false;
    for (const auto& st : r.trace) saw_case = saw_case || st.action == "different-parity" || st.action == "same-parity";
    EXPECT_TRUE(saw_case);
    EXPECT_LE(r.bihole.order(), max_bihole(g).order);
  }
}

TEST(Profile012, RandomCorpus) {
  std::mt19937 rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rep % 40;
    const auto g = testing::random_bounded(rng, n, 2);
    const auto r = bihole_profile012(g);
    expect_sound(g, r);
    if (n <= 16) { EXPECT_LE(r.bihole.order(), max_bihole(g).order); }
  }
}

TEST(Profile012, Preconditions) {
  EXPECT_THROW(bihole_profile012(complete(3)), precondition_error);
}

TEST(AvgDegree, Examples) {
  const auto m6 = matching(6);
  const auto r = bihole_avg_degree(m6);
  EXPECT_EQ(r.guarantee, Rational(1));
  EXPECT_GE(r.bihole.order(), 3U);
  expect_sound(m6, r);

  const auto k5 = complete(5);
  const auto rk = bihole_avg_degree(k5);
  EXPECT_EQ(rk.guarantee, Rational(5, 6) - 2);
  expect_sound(k5, rk);

  const auto g = gen_random_edges(12, 24, 1);
  const auto rg = bihole_avg_degree(g);
  EXPECT_EQ(rg.guarantee, Rational(2));
  EXPECT_GE(rg.bihole.order(), 2U);
  expect_sound(g, rg);
  EXPECT_THROW(bihole_avg_degree(build_graph(2, 3, {})), precondition_error);
}

TEST(AvgDegree, RandomCorpus) {
  std::mt19937 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 60;
    const auto g = testing::random_graph(rng, n, n, 0.02 + 0.01 * (rep % 10));
    const auto r = bihole_avg_degree(g);
    expect_sound(g, r);
  }
}

TEST(Avg2, Examples) {
  const auto e2 = edgeless(2);
  const auto r = bihole_avg2(e2);
  EXPECT_EQ(r.guarantee, Rational(0));
  expect_sound(e2, r);

  // C4 (2x2 complete) plus two isolated vertices per side
  const auto c4 = build_graph(4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto rc = bihole_avg2(c4);
  EXPECT_GE(rc.bihole.order(), 1U);
  EXPECT_EQ(brute_force_oracle(c4).order, 2U);
  expect_sound(c4, rc);

  const auto g = gen_random_edges(15, 30, 1);
  const auto rg = bihole_avg2(g);
  EXPECT_EQ(rg.guarantee, Rational(13, 3));
  EXPECT_GE(rg.bihole.order(), 5U);
  expect_sound(g, rg);

  EXPECT_THROW(bihole_avg2(complete(3)), precondition_error);
}

TEST(Avg2, RandomCorpusWithHubs) {
  // a few high-degree vertices on both sides force the induction steps
  std::mt19937 rng(4);
  std::size_t induction_steps = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 6 + rep % 50;
    std::vector<Edge> edges;
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    const std::size_t hubs = 1 + rep % 3;
    for (std::size_t h = 0; h < hubs; ++h)
      for (int k = 0; k < 4; ++k) {
        edges.push_back({static_cast<Vertex>(h), pick(rng)});
        edges.push_back({pick(rng), static_cast<Vertex>(h)});
      }
    while (edges.size() < 2 * n) edges.push_back({pick(rng), pick(rng)});
    edges.resize(2 * n);
    auto g = build_graph(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
    ASSERT_LE(g.m(), 2 * n);
    const auto r = bihole_avg2(g);
    expect_sound(g, r);
    for (const auto& st : r.trace)
      if (st.action != "base" && st.action != "base-swapped" && st.action != "fallback-exact") ++induction_steps;
    if (n <= 16) { EXPECT_LE(r.bihole.order(), max_bihole(g).order); }
  }
  EXPECT_GT(induction_steps, 0U);
}

TEST(BoundedDegree, Examples) {
  for (auto mode : {SolverMode::certified, SolverMode::heuristic}) {
    BoundedDegreeSolver s;
    s.mode = mode;
    EXPECT_EQ(bounded_degree_solve(edgeless(5), s).bihole.order(), 5U);
  }
  const auto c8 = cycle(4);
  const auto r = bounded_degree_solve(c8);
  EXPECT_EQ(r.bihole.order(), 1U);
  EXPECT_EQ(r.guarantee, Rational(1));

  const auto g = gen_random_bounded(11, 3, Rational(1), 6);
  const auto rg = bounded_degree_solve(g);
  EXPECT_EQ(rg.guarantee, Rational(3));
  EXPECT_GE(rg.bihole.order(), 3U);
  expect_sound(g, rg);
}

TEST(BoundedDegree, PackingMeetsContractBeyondExactCap) {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 25 + rep % 150;
    const auto g = testing::random_bounded(rng, n, 2);
    const auto r = bounded_degree_solve(g);
    EXPECT_EQ(r.trace.front().action, "packing");
    expect_sound(g, r);
  }
  // cycles are the tight case
  for (std::size_t n = 25; n < 60; ++n) expect_sound(cycle(n), bounded_degree_solve(cycle(n)));
}

TEST(BoundedDegree, PackingMatchesContractOnSmallGraphs) {
  std::mt19937 rng(6);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rep % 20;
    const auto g = testing::random_bounded(rng, n, 2);
    const auto h = detail::packing_degree2(g);
    EXPECT_TRUE(is_bihole(g, h));
    EXPECT_GE(static_cast<std::int64_t>(h.order()), required_order(f2_value(static_cast<std::int64_t>(n)).value));
  }
}

TEST(BoundedDegree, TargetedSearchForHigherDegree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_random_bounded(40, 3, Rational(1), seed);
    const auto r = bounded_degree_solve(g);
    expect_sound(g, r);
  }
}

TEST(BoundedDegree, HeuristicIsBestEffort) {
  BoundedDegreeSolver h;
  h.mode = SolverMode::heuristic;
  std::mt19937 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const auto g = testing::random_graph(rng, 12, 12, 0.3);
    const auto r = bounded_degree_solve(g, h);
    EXPECT_TRUE(r.heuristic);
    EXPECT_TRUE(is_bihole(g, r.bihole));
    EXPECT_LE(r.bihole.order(), max_bihole(g).order);
  }
}

TEST(Replay, DetectsTampering) {
  const auto g = gen_extremal_paths(2);
  auto r = bihole_profile012(g);
  ASSERT_TRUE(replay_trace(g, r.trace));
  ASSERT_FALSE(r.trace.empty());
  auto bad = r.trace;
  bad.front().n_a_after += 1;
  EXPECT_FALSE(replay_trace(g, bad));
  bad = r.trace;
  bad.push_back(bad.front());
  if (!bad.front().removed_a.empty()) { EXPECT_FALSE(replay_trace(g, bad)); }
}

TEST(Determinism, RepeatedRunsAgree) {
  const auto g = gen_random_edges(40, 80, 12);
  const auto a = bihole_avg2(g);
  const auto b = bihole_avg2(g);
  EXPECT_EQ(a.bihole.s, b.bihole.s);
  EXPECT_EQ(a.bihole.t, b.bihole.t);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) EXPECT_EQ(a.trace[k].removed_a, b.trace[k].removed_a);
}

}  // namespace
}  // namespace bihole
