#pragma once

// Naive reference computations for tests. Deliberately share no code with
// the library's search: plain bitmask loops over the edge list.

#include "bihole/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace bihole::testing {

/// max over S ⊆ A of min(|S|, |B \ N(S)|) by recomputing N(S) from scratch.
inline std::size_t naive_max_order(const BipartiteGraph& g) {
  const auto edges = g.edges();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n_a()); ++mask) {
    std::vector<char> hit(g.n_b(), 0);
    for (const auto& e : edges)
      if ((mask >> e.a) & 1U) hit[e.b] = 1;
    const auto free_b = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 0));
    best = std::max(best, std::min<std::size_t>(static_cast<std::size_t>(std::popcount(mask)), free_b));
  }
  return best;
}

/// Largest k over all pairs (S, T) with |S| = |T| = k and no S-T edge.
inline std::size_t naive_pair_order(const BipartiteGraph& g) {
  const auto edges = g.edges();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n_a()); ++s)
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << g.n_b()); ++t) {
      if (std::popcount(s) != std::popcount(t)) continue;
      const auto k = static_cast<std::size_t>(std::popcount(s));
      if (k <= best) continue;
      bool ok = true;
      for (const auto& e : edges)
        if (((s >> e.a) & 1U) && ((t >> e.b) & 1U)) {
          ok = false;
          break;
        }
      if (ok) best = k;
    }
  return best;
}

/// Double loop over S x T against adjacency.
inline bool naive_is_bihole(const BipartiteGraph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
  if (s.size() != t.size()) return false;
  for (auto a : s)
    if (a >= g.n_a()) return false;
  for (auto b : t)
    if (b >= g.n_b()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j]) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  for (const auto& e : g.edges())
    for (auto a : s)
      for (auto b : t)
        if (e.a == a && e.b == b) return false;
  return true;
}

/// Test-local random graph: each of the n_a * n_b pairs kept with probability q.
inline BipartiteGraph random_graph(std::mt19937& rng, std::size_t n_a, std::size_t n_b, double q) {
  std::bernoulli_distribution keep(q);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n_a; ++a)
    for (Vertex b = 0; b < n_b; ++b)
      if (keep(rng)) edges.push_back({a, b});
  return BipartiteGraph::build(static_cast<std::int64_t>(n_a), static_cast<std::int64_t>(n_b), edges);
}

/// Random graph whose A-degrees are at most `delta`.
inline BipartiteGraph random_bounded(std::mt19937& rng, std::size_t n, std::size_t delta) {
  std::vector<Edge> edges;
  std::uniform_int_distribution<std::size_t> deg(0, delta);
  std::vector<Vertex> pool(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) pool[b] = b;
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto d = std::min(deg(rng), n);
    for (std::size_t k = 0; k < d; ++k) edges.push_back({a, pool[k]});
  }
  return BipartiteGraph::build(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
}

inline BipartiteGraph cycle(std::size_t n) {
  // C_{2n}: a_i ~ b_i and a_i ~ b_{i+1 mod n}
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    edges.push_back({i, i});
    edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
  }
  return BipartiteGraph::build(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
}

inline BipartiteGraph matching(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, i});
  return BipartiteGraph::build(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
}

inline BipartiteGraph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) edges.push_back({a, b});
  return BipartiteGraph::build(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), edges);
}

inline BipartiteGraph edgeless(std::size_t n) {
  return BipartiteGraph::build(static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), {});
}

}  // namespace bihole::testing
