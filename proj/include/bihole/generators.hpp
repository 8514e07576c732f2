#pragma once

#include "bihole/graph.hpp"
#include "bihole/rational.hpp"
#include "bihole/rng.hpp"

#include <cstdint>
#include <unordered_set>
#include <vector>

namespace bihole {

/// Extremal family for the n0 coefficient of the degree-profile bound.
///
/// A-vertices 0..i-1 are isolated. Path j (0 <= j < i) alternates
/// B A B ... A B over 2i+1 B-vertices and 2i A-vertices, so every path has
/// order 4i+1 and both endpoints in B. Result: |A| = |B| = i + 2i^2.
inline BipartiteGraph gen_extremal_paths(std::int64_t i) {
  if (i < 2 || i % 2 != 0) throw input_error("extremal paths need an even i >= 2");
  const std::int64_t side = i + 2 * i * i;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(4 * i * i));
  Vertex next_a = static_cast<Vertex>(i);
  Vertex next_b = 0;
  for (std::int64_t path = 0; path < i; ++path) {
    Vertex left = next_b++;
    for (std::int64_t k = 0; k < 2 * i; ++k) {
      const Vertex a = next_a++;
      const Vertex right = next_b++;
      edges.push_back({a, left});
      edges.push_back({a, right});
      left = right;
    }
  }
  return BipartiteGraph::build(side, side, edges);
}

namespace detail {

/// `count` distinct values from [0, universe) via Floyd's algorithm, in draw order.
inline std::vector<std::uint64_t> sample_distinct(rng::Engine& eng, std::uint64_t universe,
                                                  std::uint64_t count) {
  std::vector<std::uint64_t> picked;
  std::unordered_set<std::uint64_t> seen;
  picked.reserve(count);
  for (std::uint64_t j = universe - count; j < universe; ++j) {
    const std::uint64_t r = rng::uniform_below(eng, j + 1);
    const std::uint64_t v = seen.count(r) ? j : r;
    seen.insert(v);
    picked.push_back(v);
  }
  return picked;
}

}  // namespace detail

/// Balanced n x n graph in which every A-vertex has degree at most `delta`.
///
/// A-vertex u uses its own stream derive_seed(seed, bounded_vertex, u): it
/// first runs `delta` Bernoulli(edge_prob) trials to fix its degree, then
/// draws that many distinct B-neighbors. B-degrees are unconstrained.
inline BipartiteGraph gen_random_bounded(std::int64_t n, std::int64_t delta,
                                         const Rational& edge_prob, std::uint64_t seed) {
  if (n < 0 || delta < 0) throw input_error("n and delta must be non-negative");
  if (delta > n) throw input_error("delta must not exceed n");
  if (edge_prob < 0 || edge_prob > 1) throw input_error("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  for (std::int64_t u = 0; u < n; ++u) {
    auto eng = rng::make_engine(seed, rng::Stream::bounded_vertex, static_cast<std::uint64_t>(u));
    std::uint64_t degree = 0;
    for (std::int64_t k = 0; k < delta; ++k) degree += rng::bernoulli(eng, edge_prob) ? 1 : 0;
    for (auto b : detail::sample_distinct(eng, static_cast<std::uint64_t>(n), degree))
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(b)});
  }
  return BipartiteGraph::build(n, n, edges);
}

/// Balanced n x n graph with exactly m distinct edges, uniform without
/// replacement over the n^2 slots (slot k is edge (k / n, k % n)).
inline BipartiteGraph gen_random_edges(std::int64_t n, std::int64_t m, std::uint64_t seed) {
  if (n < 0 || m < 0) throw input_error("n and m must be non-negative");
  if (m > n * n) throw input_error("m exceeds n^2");
  auto eng = rng::make_engine(seed, rng::Stream::edge_sample);
  const auto un = static_cast<std::uint64_t>(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (auto slot : detail::sample_distinct(eng, un * un, static_cast<std::uint64_t>(m)))
    edges.push_back({static_cast<Vertex>(slot / un), static_cast<Vertex>(slot % un)});
  return BipartiteGraph::build(n, n, edges);
}

}  // namespace bihole
