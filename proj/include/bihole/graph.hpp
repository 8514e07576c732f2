#pragma once

#include "bihole/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bihole {

using Vertex = std::uint32_t;

enum class Side { A, B };

inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

/// Malformed caller input (out-of-range index, negative count, bad parameter).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algorithm was called on a graph outside its domain.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  Vertex a;
  Vertex b;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple bipartite graph with partite sets A = {0..n_a-1} and B = {0..n_b-1}.
/// Adjacency is kept sorted on both sides. Immutable once built.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Builds a simple graph; duplicate edges collapse, out-of-range indices throw.
  static BipartiteGraph build(std::int64_t n_a, std::int64_t n_b, std::span<const Edge> edges) {
    if (n_a < 0 || n_b < 0) throw input_error("vertex counts must be non-negative");
    BipartiteGraph g;
    g.adj_a_.resize(static_cast<std::size_t>(n_a));
    g.adj_b_.resize(static_cast<std::size_t>(n_b));
    for (const auto& e : edges) {
      if (e.a >= static_cast<std::uint64_t>(n_a) || e.b >= static_cast<std::uint64_t>(n_b))
        throw input_error("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                          ") out of range for " + std::to_string(n_a) + "x" +
                          std::to_string(n_b));
      g.adj_a_[e.a].push_back(e.b);
    }
    for (std::size_t a = 0; a < g.adj_a_.size(); ++a) {
      auto& row = g.adj_a_[a];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      g.m_ += row.size();
      for (auto b : row) g.adj_b_[b].push_back(static_cast<Vertex>(a));
    }
    return g;
  }

  std::size_t n_a() const { return adj_a_.size(); }
  std::size_t n_b() const { return adj_b_.size(); }
  std::size_t size(Side s) const { return s == Side::A ? n_a() : n_b(); }
  std::size_t m() const { return m_; }
  bool balanced() const { return n_a() == n_b(); }

  std::span<const Vertex> neighbors(Side s, Vertex v) const {
    return s == Side::A ? std::span<const Vertex>(adj_a_[v]) : std::span<const Vertex>(adj_b_[v]);
  }
  std::span<const Vertex> neighbors_a(Vertex a) const { return adj_a_[a]; }
  std::span<const Vertex> neighbors_b(Vertex b) const { return adj_b_[b]; }
  std::size_t degree(Side s, Vertex v) const { return neighbors(s, v).size(); }
  std::size_t degree_a(Vertex a) const { return adj_a_[a].size(); }
  std::size_t degree_b(Vertex b) const { return adj_b_[b].size(); }

  bool adjacent(Vertex a, Vertex b) const {
    return std::binary_search(adj_a_[a].begin(), adj_a_[a].end(), b);
  }

  /// Maximum degree on one side (0 for an empty side).
  std::size_t max_degree(Side s) const {
    std::size_t best = 0;
    for (Vertex v = 0; v < size(s); ++v) best = std::max(best, degree(s, v));
    return best;
  }
  std::size_t min_degree(Side s) const {
    if (size(s) == 0) return 0;
    std::size_t best = degree(s, 0);
    for (Vertex v = 1; v < size(s); ++v) best = std::min(best, degree(s, v));
    return best;
  }

  /// d = m / n with n = |A|; the density parameter of "at most dn edges".
  Rational average_degree() const {
    if (n_a() == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(m_), static_cast<std::int64_t>(n_a()));
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex a = 0; a < n_a(); ++a)
      for (auto b : adj_a_[a]) out.push_back({a, b});
    return out;
  }

  /// Same graph with the roles of A and B exchanged.
  BipartiteGraph swapped() const {
    BipartiteGraph g;
    g.adj_a_ = adj_b_;
    g.adj_b_ = adj_a_;
    g.m_ = m_;
    return g;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_a_;
  std::vector<std::vector<Vertex>> adj_b_;
  std::size_t m_ = 0;
};

inline BipartiteGraph build_graph(std::int64_t n_a, std::int64_t n_b, std::span<const Edge> edges) {
  return BipartiteGraph::build(n_a, n_b, edges);
}

inline BipartiteGraph build_graph(std::int64_t n_a, std::int64_t n_b,
                                  std::initializer_list<Edge> edges) {
  return BipartiteGraph::build(n_a, n_b, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Independent set with |s| == |t|; s ⊆ A, t ⊆ B, both sorted.
struct Bihole {
  std::vector<Vertex> s;
  std::vector<Vertex> t;

  std::size_t order() const { return s.size(); }

  Bihole swapped() const { return {t, s}; }

  void normalize() {
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
  }

  friend bool operator==(const Bihole&, const Bihole&) = default;
};

struct DegreeProfile {
  Side side = Side::A;
  std::map<std::size_t, std::size_t> counts;  // degree -> number of vertices

  std::size_t count(std::size_t degree) const {
    auto it = counts.find(degree);
    return it == counts.end() ? 0 : it->second;
  }
  std::size_t n0() const { return count(0); }
  std::size_t n1() const { return count(1); }
  std::size_t n2() const { return count(2); }
  std::size_t n3() const { return count(3); }
  /// Vertices of degree >= d.
  std::size_t at_least(std::size_t d) const {
    std::size_t total = 0;
    for (auto it = counts.lower_bound(d); it != counts.end(); ++it) total += it->second;
    return total;
  }
  std::size_t total() const { return at_least(0); }
  std::size_t degree_sum() const {
    std::size_t sum = 0;
    for (const auto& [deg, cnt] : counts) sum += deg * cnt;
    return sum;
  }
  std::size_t max_degree() const { return counts.empty() ? 0 : counts.rbegin()->first; }
  std::size_t min_degree() const { return counts.empty() ? 0 : counts.begin()->first; }

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline DegreeProfile degree_profile(const BipartiteGraph& g, Side side) {
  DegreeProfile p{side, {}};
  for (Vertex v = 0; v < g.size(side); ++v) ++p.counts[g.degree(side, v)];
  return p;
}

/// A maximal connected vertex set.
struct ComponentView {
  std::vector<Vertex> a_vertices;  // sorted
  std::vector<Vertex> b_vertices;  // sorted
  std::size_t edge_count = 0;
  bool is_tree = false;

  std::size_t a_size() const { return a_vertices.size(); }
  std::size_t b_size() const { return b_vertices.size(); }
  std::int64_t b_excess() const {
    return static_cast<std::int64_t>(b_size()) - static_cast<std::int64_t>(a_size());
  }
  /// Smallest contained A-index, or n_a-independent sentinel when there is none.
  Vertex min_a() const { return a_vertices.empty() ? UINT32_MAX : a_vertices.front(); }
};

/// Connected components, discovered from A-vertices in index order and then
/// from the remaining B-vertices in index order.
inline std::vector<ComponentView> components(const BipartiteGraph& g) {
  std::vector<char> seen_a(g.n_a(), 0), seen_b(g.n_b(), 0);
  std::vector<ComponentView> out;
  std::vector<std::pair<Side, Vertex>> stack;

  const auto explore = [&](Side side, Vertex root) {
    ComponentView c;
    stack.clear();
    stack.emplace_back(side, root);
    (side == Side::A ? seen_a : seen_b)[root] = 1;
    std::size_t degree_sum = 0;
    while (!stack.empty()) {
      auto [s, v] = stack.back();
      stack.pop_back();
      if (s == Side::A) {
        c.a_vertices.push_back(v);
        degree_sum += g.degree_a(v);
        for (auto b : g.neighbors_a(v))
          if (!seen_b[b]) {
            seen_b[b] = 1;
            stack.emplace_back(Side::B, b);
          }
      } else {
        c.b_vertices.push_back(v);
        for (auto a : g.neighbors_b(v))
          if (!seen_a[a]) {
            seen_a[a] = 1;
            stack.emplace_back(Side::A, a);
          }
      }
    }
    std::sort(c.a_vertices.begin(), c.a_vertices.end());
    std::sort(c.b_vertices.begin(), c.b_vertices.end());
    c.edge_count = degree_sum;
    c.is_tree = c.edge_count + 1 == c.a_size() + c.b_size();
    out.push_back(std::move(c));
  };

  for (Vertex a = 0; a < g.n_a(); ++a)
    if (!seen_a[a]) explore(Side::A, a);
  for (Vertex b = 0; b < g.n_b(); ++b)
    if (!seen_b[b]) explore(Side::B, b);
  return out;
}

/// True iff |s| == |t|, both are sets of in-range vertices, and no s-t edge exists.
inline bool is_bihole(const BipartiteGraph& g, std::span<const Vertex> s, std::span<const Vertex> t) {
  if (s.size() != t.size()) return false;
  std::vector<char> in_t(g.n_b(), 0);
  for (auto b : t) {
    if (b >= g.n_b() || in_t[b]) return false;
    in_t[b] = 1;
  }
  std::vector<char> in_s(g.n_a(), 0);
  for (auto a : s) {
    if (a >= g.n_a() || in_s[a]) return false;
    in_s[a] = 1;
    for (auto b : g.neighbors_a(a))
      if (in_t[b]) return false;
  }
  return true;
}

inline bool is_bihole(const BipartiteGraph& g, const Bihole& h) { return is_bihole(g, h.s, h.t); }

/// Induced subgraph on kept vertices plus the maps back to the host indices.
struct InducedSubgraph {
  BipartiteGraph graph;
  std::vector<Vertex> a_of;  // local A-index -> host A-index
  std::vector<Vertex> b_of;

  Bihole lift(const Bihole& local) const {
    Bihole h;
    h.s.reserve(local.s.size());
    h.t.reserve(local.t.size());
    for (auto a : local.s) h.s.push_back(a_of[a]);
    for (auto b : local.t) h.t.push_back(b_of[b]);
    h.normalize();
    return h;
  }
};

/// keep_a / keep_b need not be sorted; local indices follow ascending host order.
inline InducedSubgraph induced_subgraph(const BipartiteGraph& g, std::vector<Vertex> keep_a,
                                        std::vector<Vertex> keep_b) {
  std::sort(keep_a.begin(), keep_a.end());
  std::sort(keep_b.begin(), keep_b.end());
  constexpr Vertex absent = UINT32_MAX;
  std::vector<Vertex> local_b(g.n_b(), absent);
  for (std::size_t i = 0; i < keep_b.size(); ++i) local_b[keep_b[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keep_a.size(); ++i)
    for (auto b : g.neighbors_a(keep_a[i]))
      if (local_b[b] != absent) edges.push_back({static_cast<Vertex>(i), local_b[b]});
  InducedSubgraph sub;
  sub.graph = BipartiteGraph::build(static_cast<std::int64_t>(keep_a.size()),
                                    static_cast<std::int64_t>(keep_b.size()), edges);
  sub.a_of = std::move(keep_a);
  sub.b_of = std::move(keep_b);
  return sub;
}

/// Mutable "alive" view over an immutable host graph. Degrees, edge count and
/// side sizes are maintained under vertex deletion, so recursive constructions
/// can shrink the instance while keeping host indices.
class SubgraphView {
 public:
  explicit SubgraphView(const BipartiteGraph& g)
      : g_(&g),
        alive_a_(g.n_a(), 1),
        alive_b_(g.n_b(), 1),
        deg_a_(g.n_a()),
        deg_b_(g.n_b()),
        n_a_(g.n_a()),
        n_b_(g.n_b()),
        m_(g.m()) {
    for (Vertex a = 0; a < g.n_a(); ++a) deg_a_[a] = g.degree_a(a);
    for (Vertex b = 0; b < g.n_b(); ++b) deg_b_[b] = g.degree_b(b);
  }

  const BipartiteGraph& host() const { return *g_; }
  std::size_t n_a() const { return n_a_; }
  std::size_t n_b() const { return n_b_; }
  std::size_t size(Side s) const { return s == Side::A ? n_a_ : n_b_; }
  std::size_t m() const { return m_; }
  bool balanced() const { return n_a_ == n_b_; }

  bool alive(Side s, Vertex v) const { return (s == Side::A ? alive_a_ : alive_b_)[v] != 0; }
  std::size_t degree(Side s, Vertex v) const { return (s == Side::A ? deg_a_ : deg_b_)[v]; }

  void remove(Side s, Vertex v) {
    auto& alive = s == Side::A ? alive_a_ : alive_b_;
    if (!alive[v]) throw std::logic_error("vertex removed twice");
    alive[v] = 0;
    const Side other = s == Side::A ? Side::B : Side::A;
    auto& other_alive = other == Side::A ? alive_a_ : alive_b_;
    auto& other_deg = other == Side::A ? deg_a_ : deg_b_;
    for (auto w : g_->neighbors(s, v))
      if (other_alive[w]) {
        --other_deg[w];
        --m_;
      }
    (s == Side::A ? n_a_ : n_b_) -= 1;
  }

  /// Alive vertices of one side in index order.
  std::vector<Vertex> vertices(Side s) const {
    std::vector<Vertex> out;
    const auto& alive = s == Side::A ? alive_a_ : alive_b_;
    for (Vertex v = 0; v < alive.size(); ++v)
      if (alive[v]) out.push_back(v);
    return out;
  }

  /// Alive neighbors of v (v itself may be dead).
  std::vector<Vertex> alive_neighbors(Side s, Vertex v) const {
    std::vector<Vertex> out;
    const Side other = s == Side::A ? Side::B : Side::A;
    for (auto w : g_->neighbors(s, v))
      if (alive(other, w)) out.push_back(w);
    return out;
  }

  std::size_t max_degree(Side s) const {
    std::size_t best = 0;
    const auto& alive = s == Side::A ? alive_a_ : alive_b_;
    const auto& deg = s == Side::A ? deg_a_ : deg_b_;
    for (std::size_t v = 0; v < alive.size(); ++v)
      if (alive[v]) best = std::max(best, deg[v]);
    return best;
  }

  std::size_t min_degree(Side s) const {
    std::size_t best = SIZE_MAX;
    const auto& alive = s == Side::A ? alive_a_ : alive_b_;
    const auto& deg = s == Side::A ? deg_a_ : deg_b_;
    for (std::size_t v = 0; v < alive.size(); ++v)
      if (alive[v]) best = std::min(best, deg[v]);
    return best == SIZE_MAX ? 0 : best;
  }

  DegreeProfile profile(Side s) const {
    DegreeProfile p{s, {}};
    const auto& alive = s == Side::A ? alive_a_ : alive_b_;
    const auto& deg = s == Side::A ? deg_a_ : deg_b_;
    for (std::size_t v = 0; v < alive.size(); ++v)
      if (alive[v]) ++p.counts[deg[v]];
    return p;
  }

  /// Materializes the alive part as a standalone graph.
  InducedSubgraph materialize() const {
    return induced_subgraph(*g_, vertices(Side::A), vertices(Side::B));
  }

 private:
  const BipartiteGraph* g_;
  std::vector<char> alive_a_, alive_b_;
  std::vector<std::size_t> deg_a_, deg_b_;
  std::size_t n_a_, n_b_, m_;
};

}  // namespace bihole
