#pragma once

// Polynomial-time bihole constructions, each returned with the order it is
// guaranteed to reach.
//
// Recursive constructions run on a SubgraphView of the input, so every vertex
// keeps its host index and the produced bihole needs no lifting. Each
// recursion step is logged in a trace together with the size of the
// sub-instance it leaves behind; replay_trace re-applies the removals to
// audit determinism.

#include "bihole/bounds.hpp"
#include "bihole/exact.hpp"
#include "bihole/graph.hpp"
#include "bihole/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace bihole {

struct TraceStep {
  std::string action;
  std::vector<Vertex> removed_a;
  std::vector<Vertex> removed_b;
  std::vector<Vertex> added_a;
  std::vector<Vertex> added_b;
  // sub-instance left after the removals
  std::size_t n_a_after = 0;
  std::size_t n_b_after = 0;
  std::size_t m_after = 0;
};

struct GuaranteedBihole {
  Bihole bihole;
  Rational guarantee{0};
  std::string algorithm;
  std::vector<TraceStep> trace;
  /// Some delegated step ran a best-effort solver, so the guarantee is a
  /// target rather than a promise.
  bool heuristic = false;

  bool meets_guarantee() const {
    return static_cast<std::int64_t>(bihole.order()) >= required_order(guarantee);
  }
};

enum class SolverMode { certified, heuristic };

inline const char* to_string(SolverMode m) {
  return m == SolverMode::certified ? "certified" : "heuristic";
}

/// Stand-in for the cited bounded-degree constructions. Its contract on a
/// balanced graph with n >= 2 is order >= ceil(n/2) - 1 when every A-degree is
/// at most 2, and order >= floor((n-2)/Delta_A) otherwise.
///
/// certified: sides up to exact_cap are solved to optimality. Larger graphs
/// with A-degrees <= 2 use the component packing below, which provably meets
/// the contract. Larger graphs of higher degree run the exact search
/// warm-started by the heuristic and stopped once the contract is reached;
/// if the node budget runs out first, solving fails with capacity_error.
///
/// heuristic: smallest-degree-first greedy plus 1-swap local search. The
/// contract is reported but not promised.
struct BoundedDegreeSolver {
  SolverMode mode = SolverMode::certified;
  std::size_t exact_cap = 24;
  std::uint64_t node_budget = 10'000'000;
};

/// Order the bounded-degree solver must reach on g.
inline Rational bounded_degree_contract(const BipartiteGraph& g) {
  const auto n = static_cast<std::int64_t>(g.n_a());
  if (!g.balanced() || n < 2) return Rational(0);
  const auto delta = static_cast<std::int64_t>(g.max_degree(Side::A));
  if (delta <= 2) return f2_value(n).value;
  return delta_floor_bound(n, delta).value;
}

namespace detail {

inline TraceStep make_step(const SubgraphView& view, std::string action) {
  TraceStep st;
  st.action = std::move(action);
  st.n_a_after = view.n_a();
  st.n_b_after = view.n_b();
  st.m_after = view.m();
  return st;
}

inline void refresh(TraceStep& st, const SubgraphView& view) {
  st.n_a_after = view.n_a();
  st.n_b_after = view.n_b();
  st.m_after = view.m();
}

inline void remove_logged(SubgraphView& view, TraceStep& st, Side side, Vertex v) {
  view.remove(side, v);
  (side == Side::A ? st.removed_a : st.removed_b).push_back(v);
}

/// Accumulates bihole vertices in host indices.
struct Collector {
  std::vector<Vertex> s;
  std::vector<Vertex> t;

  void add(Side side, Vertex v, TraceStep& st) {
    (side == Side::A ? s : t).push_back(v);
    (side == Side::A ? st.added_a : st.added_b).push_back(v);
  }
  void add_all(const Bihole& h, TraceStep& st) {
    for (auto a : h.s) add(Side::A, a, st);
    for (auto b : h.t) add(Side::B, b, st);
  }
  Bihole finish() const {
    Bihole h{s, t};
    h.normalize();
    return h;
  }
};

/// S and B \ N(S) trimmed to the order they support.
inline Bihole balance(const BipartiteGraph& g, std::vector<Vertex> s) {
  std::sort(s.begin(), s.end());
  auto t = complement_side(g, s);
  const auto k = std::min(s.size(), t.size());
  s.resize(k);
  t.resize(k);
  return {std::move(s), std::move(t)};
}

/// Greedy: the k smallest-degree A-vertices for the largest k whose degree
/// sum is at most n_b - k, followed by add / drop / 1-swap local search on
/// min(|S|, |B \ N(S)|).
inline Bihole greedy_local_search(const BipartiteGraph& g) {
  const std::size_t na = g.n_a(), nb = g.n_b();
  std::vector<Vertex> by_degree(na);
  std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex x, Vertex y) { return g.degree_a(x) < g.degree_a(y); });
  std::size_t k = 0, degree_sum = 0;
  while (k < na && degree_sum + g.degree_a(by_degree[k]) + k + 1 <= nb) {
    degree_sum += g.degree_a(by_degree[k]);
    ++k;
  }

  std::vector<char> in_s(na, 0);
  std::vector<std::uint32_t> cover(nb, 0);
  std::size_t size = 0, covered = 0;
  const auto insert = [&](Vertex v) {
    in_s[v] = 1;
    ++size;
    for (auto b : g.neighbors_a(v))
      if (cover[b]++ == 0) ++covered;
  };
  const auto erase = [&](Vertex v) {
    in_s[v] = 0;
    --size;
    for (auto b : g.neighbors_a(v))
      if (--cover[b] == 0) --covered;
  };
  for (std::size_t i = 0; i < k; ++i) insert(by_degree[i]);

  const auto new_cover = [&](Vertex v) {
    std::size_t c = 0;
    for (auto b : g.neighbors_a(v)) c += cover[b] == 0 ? 1 : 0;
    return c;
  };
  const auto freed = [&](Vertex v) {
    std::size_t c = 0;
    for (auto b : g.neighbors_a(v)) c += cover[b] == 1 ? 1 : 0;
    return c;
  };

  std::vector<char> mark(nb, 0);
  for (;;) {
    const std::size_t free_b = nb - covered;
    const std::size_t current = std::min(size, free_b);
    bool moved = false;
    for (Vertex v = 0; v < na && !moved; ++v)
      if (!in_s[v] && std::min(size + 1, free_b - new_cover(v)) > current) {
        insert(v);
        moved = true;
      }
    for (Vertex x = 0; x < na && !moved; ++x)
      if (in_s[x] && size > 0 && std::min(size - 1, free_b + freed(x)) > current) {
        erase(x);
        moved = true;
      }
    for (Vertex x = 0; x < na && !moved; ++x) {
      if (!in_s[x]) continue;
      const std::size_t gain = freed(x);
      if (gain == 0) continue;
      for (auto b : g.neighbors_a(x)) mark[b] = 1;
      for (Vertex y = 0; y < na && !moved; ++y) {
        if (in_s[y]) continue;
        std::size_t cost = 0;
        for (auto b : g.neighbors_a(y))
          if (cover[b] == 0 || (cover[b] == 1 && mark[b])) ++cost;
        if (cost < gain) {
          erase(x);
          insert(y);
          moved = true;
        }
      }
      for (auto b : g.neighbors_a(x)) mark[b] = 0;
    }
    if (!moved) break;
  }

  std::vector<Vertex> s;
  for (Vertex v = 0; v < na; ++v)
    if (in_s[v]) s.push_back(v);
  return balance(g, std::move(s));
}

/// Component packing for graphs whose A-degrees are all at most 2.
///
/// View B as the nodes of a multigraph in which a degree-2 A-vertex is an
/// edge and a degree-1 A-vertex a pendant item. Components are listed by
/// deficiency (B-nodes minus items) ascending, each in BFS order. Every BFS
/// prefix of a component spans at least (size - 1) items and every partial
/// sum of ascending deficiencies is at most the number e0 of isolated
/// A-vertices. Keeping a prefix U of this order and taking T = B \ U
/// therefore leaves at least |U| - e0 - 1 items inside U, which yields order
/// ceil(n/2) - 1 on balanced inputs. The best prefix is returned.
inline Bihole packing_degree2(const BipartiteGraph& g) {
  if (g.max_degree(Side::A) > 2) throw precondition_error("packing needs A-degrees <= 2");
  const auto comps = components(g);
  std::vector<const ComponentView*> with_b;
  std::size_t isolated_a = 0;
  for (const auto& c : comps) {
    if (c.b_size() == 0)
      isolated_a += c.a_size();
    else
      with_b.push_back(&c);
  }
  std::stable_sort(with_b.begin(), with_b.end(), [](const ComponentView* x, const ComponentView* y) {
    return x->b_excess() < y->b_excess();
  });

  std::vector<Vertex> order;
  order.reserve(g.n_b());
  std::vector<char> seen(g.n_b(), 0);
  for (const auto* c : with_b) {
    std::queue<Vertex> q;
    q.push(c->b_vertices.front());
    seen[c->b_vertices.front()] = 1;
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      order.push_back(x);
      for (auto a : g.neighbors_b(x))
        for (auto y : g.neighbors_a(a))
          if (!seen[y]) {
            seen[y] = 1;
            q.push(y);
          }
    }
  }

  // prefix scan: items complete once all their neighbors are inside U
  std::vector<std::uint32_t> inside(g.n_a(), 0);
  std::size_t items = 0;
  const std::size_t nb = g.n_b();
  std::size_t best_len = 0;
  std::size_t best_val = std::min(nb, isolated_a);
  for (std::size_t len = 1; len <= order.size(); ++len) {
    for (auto a : g.neighbors_b(order[len - 1]))
      if (++inside[a] == g.degree_a(a)) ++items;
    const std::size_t val = std::min(nb - len, items + isolated_a);
    if (val > best_val) {
      best_val = val;
      best_len = len;
    }
  }

  std::vector<char> in_u(nb, 0);
  for (std::size_t i = 0; i < best_len; ++i) in_u[order[i]] = 1;
  std::vector<Vertex> s;
  for (Vertex a = 0; a < g.n_a(); ++a) {
    bool ok = true;
    for (auto b : g.neighbors_a(a)) ok = ok && in_u[b];
    if (ok) s.push_back(a);
  }
  return balance(g, std::move(s));
}

}  // namespace detail

/// Runs the bounded-degree stand-in on g.
inline GuaranteedBihole bounded_degree_solve(const BipartiteGraph& g,
                                             const BoundedDegreeSolver& solver = {}) {
  GuaranteedBihole out;
  out.algorithm = "bounded";
  out.guarantee = bounded_degree_contract(g);
  TraceStep st;
  st.n_a_after = g.n_a();
  st.n_b_after = g.n_b();
  st.m_after = g.m();

  if (solver.mode == SolverMode::heuristic) {
    out.bihole = detail::greedy_local_search(g);
    out.heuristic = true;
    st.action = "greedy";
  } else {
    if (!g.balanced()) throw precondition_error("certified bounded-degree solving needs a balanced graph");
    const auto need = static_cast<std::size_t>(required_order(out.guarantee));
    if (g.n_a() <= solver.exact_cap) {
      ExactOptions opts;
      opts.node_budget = solver.node_budget;
      opts.initial = detail::greedy_local_search(g);
      auto r = max_bihole(g, opts);
      if (!r.optimal && r.order < need)
        throw capacity_error("exact search ran out of budget; use heuristic mode");
      out.bihole = r.witness;
      st.action = "exact";
    } else if (g.max_degree(Side::A) <= 2) {
      out.bihole = detail::packing_degree2(g);
      st.action = "packing";
    } else {
      ExactOptions opts;
      opts.node_budget = solver.node_budget;
      opts.initial = detail::greedy_local_search(g);
      opts.target = need;
      auto r = max_bihole(g, opts);
      if (r.order < need) {
        if (r.optimal) throw std::logic_error("exhaustive search fell short of the bounded-degree contract");
        throw capacity_error("certified mode could not reach the contract within the node budget "
                             "(n=" + std::to_string(g.n_a()) + "); use heuristic mode");
      }
      out.bihole = r.witness;
      st.action = "targeted-search";
    }
    if (!out.meets_guarantee()) throw std::logic_error("certified bounded-degree output below contract");
  }
  st.added_a = out.bihole.s;
  st.added_b = out.bihole.t;
  out.trace.push_back(std::move(st));
  return out;
}

/// Biholes for graphs whose A-degrees are all at most 1.
///
/// Every non-trivial component is a star centred in B or a K2. The bihole
/// takes all isolated A-vertices, all isolated B-vertices, all but the
/// highest-index leaf of every star, and half of the K2s from each side.
/// Guarantee: n0 + n1/2 - 1/2.
inline GuaranteedBihole bihole_delta1(const BipartiteGraph& g) {
  if (!g.balanced()) throw precondition_error("delta1 construction needs a balanced graph");
  if (g.max_degree(Side::A) > 1) throw precondition_error("delta1 construction needs A-degrees <= 1");
  const auto prof = degree_profile(g, Side::A);

  GuaranteedBihole out;
  out.algorithm = "delta1";
  out.guarantee = profile01_bound(static_cast<std::int64_t>(prof.n0()),
                                  static_cast<std::int64_t>(prof.n1())).value;

  const SubgraphView view(g);
  detail::Collector col;
  auto isolated = detail::make_step(view, "isolated");
  auto stars = detail::make_step(view, "stars");
  auto k2s = detail::make_step(view, "k2");
  std::vector<const ComponentView*> k2_list;
  const auto comps = components(g);
  for (const auto& c : comps) {
    if (c.b_size() == 0) {
      for (auto a : c.a_vertices) col.add(Side::A, a, isolated);
    } else if (c.a_size() == 0) {
      col.add(Side::B, c.b_vertices.front(), isolated);
    } else if (c.a_size() == 1) {
      k2_list.push_back(&c);
    } else {
      for (std::size_t i = 0; i + 1 < c.a_size(); ++i) col.add(Side::A, c.a_vertices[i], stars);
    }
  }
  bool last_was_a = false;
  for (const auto* c : k2_list) {
    last_was_a = col.s.size() <= col.t.size();
    if (last_was_a)
      col.add(Side::A, c->a_vertices.front(), k2s);
    else
      col.add(Side::B, c->b_vertices.front(), k2s);
  }
  if (col.s.size() > col.t.size()) {
    // only the last K2 can unbalance the sides
    auto trim = detail::make_step(view, "trim");
    if (!last_was_a) throw std::logic_error("delta1 balance invariant broken");
    col.s.pop_back();
    k2s.added_a.pop_back();
    out.trace = {isolated, stars, k2s, trim};
  } else {
    out.trace = {isolated, stars, k2s};
  }
  out.bihole = col.finish();
  if (!is_bihole(g, out.bihole)) throw std::logic_error("delta1 produced an invalid bihole");
  return out;
}

struct IndependentSplit {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
};

/// Independent set with exactly i A-vertices and a_size - i B-vertices in a
/// tree component with one more B- than A-vertex and all A-degrees 2.
///
/// Repeatedly takes the smallest-index B-leaf into the set and deletes it
/// together with its neighbour until i A-vertices remain, then takes those.
/// Deleting a leaf and its degree-2 neighbour leaves a tree with the same
/// shape invariants, so a B-leaf always exists. The loop also runs on
/// forests of such trees.
inline IndependentSplit tree_split_independent(const BipartiteGraph& g, const ComponentView& c,
                                               std::size_t i) {
  if (!c.is_tree || c.b_excess() != 1)
    throw precondition_error("tree split needs a tree with exactly one more B- than A-vertex");
  for (auto a : c.a_vertices)
    if (g.degree_a(a) != 2) throw precondition_error("tree split needs every A-degree to be 2");
  if (i > c.a_size()) throw input_error("tree split target exceeds the A-side of the component");

  std::set<Vertex> alive_a(c.a_vertices.begin(), c.a_vertices.end());
  std::vector<std::size_t> deg(g.n_b(), 0);
  std::set<Vertex> leaves;
  for (auto b : c.b_vertices) {
    deg[b] = g.degree_b(b);
    if (deg[b] == 1) leaves.insert(b);
  }
  IndependentSplit out;
  while (alive_a.size() > i) {
    if (leaves.empty()) throw std::logic_error("tree split ran out of leaves");
    const Vertex u = *leaves.begin();
    leaves.erase(leaves.begin());
    out.b.push_back(u);
    Vertex v = UINT32_MAX;
    for (auto a : g.neighbors_b(u))
      if (alive_a.count(a)) v = a;
    alive_a.erase(v);
    for (auto w : g.neighbors_a(v)) {
      if (w == u) continue;
      if (--deg[w] == 1) leaves.insert(w);
      else if (deg[w] == 0) leaves.erase(w);
    }
  }
  out.a.assign(alive_a.begin(), alive_a.end());
  std::sort(out.b.begin(), out.b.end());
  return out;
}

/// Biholes for graphs whose A-degrees are all at most 2, reaching
/// 3/4 n0 + 1/2 (n1 + n2) - 7/4.
///
/// While at least four isolated A-vertices remain: an isolated B-vertex is
/// paired with an isolated A-vertex. Otherwise the B-deficient tree
/// components sorted by A-size (ties by smallest A-index) supply G1..G4. If
/// a1, a2 (or else a3, a4) differ in parity, that pair and two isolated
/// A-vertices are consumed: all of B_x plus a tree split of G_y. If both
/// pairs agree in parity, four isolated A-vertices, B1, B3 and tree splits of
/// G2 and G4 are consumed. With at most three isolated A-vertices left the
/// remainder goes to the bounded-degree solver.
inline GuaranteedBihole bihole_profile012(const BipartiteGraph& g,
                                          const BoundedDegreeSolver& base = {}) {
  if (!g.balanced()) throw precondition_error("profile012 construction needs a balanced graph");
  if (g.max_degree(Side::A) > 2) throw precondition_error("profile012 construction needs A-degrees <= 2");
  const auto prof = degree_profile(g, Side::A);

  GuaranteedBihole out;
  out.algorithm = "profile012";
  out.guarantee = profile012_bound(static_cast<std::int64_t>(prof.n0()),
                                   static_cast<std::int64_t>(prof.n1()),
                                   static_cast<std::int64_t>(prof.n2()))
                      .value;

  const auto comps = components(g);
  std::vector<Vertex> iso_a, iso_b;
  std::vector<const ComponentView*> deficient;
  for (const auto& c : comps) {
    if (c.b_size() == 0) iso_a.push_back(c.a_vertices.front());
    else if (c.a_size() == 0) iso_b.push_back(c.b_vertices.front());
    else if (c.b_size() > c.a_size()) deficient.push_back(&c);
  }
  std::sort(iso_a.begin(), iso_a.end());
  std::sort(iso_b.begin(), iso_b.end());
  std::stable_sort(deficient.begin(), deficient.end(), [](const ComponentView* x, const ComponentView* y) {
    if (x->a_size() != y->a_size()) return x->a_size() < y->a_size();
    return x->min_a() < y->min_a();
  });

  SubgraphView view(g);
  detail::Collector col;
  std::size_t next_a = 0, next_b = 0;
  const auto remove_component = [&](const ComponentView& c, TraceStep& st) {
    for (auto a : c.a_vertices) detail::remove_logged(view, st, Side::A, a);
    for (auto b : c.b_vertices) detail::remove_logged(view, st, Side::B, b);
  };
  const auto take_isolated_a = [&](std::size_t count, TraceStep& st) {
    for (std::size_t k = 0; k < count; ++k) {
      const Vertex u = iso_a[next_a++];
      col.add(Side::A, u, st);
      detail::remove_logged(view, st, Side::A, u);
    }
  };
  const auto take_split = [&](const ComponentView& c, std::size_t target, TraceStep& st) {
    const auto split = tree_split_independent(g, c, target);
    for (auto a : split.a) col.add(Side::A, a, st);
    for (auto b : split.b) col.add(Side::B, b, st);
  };
  const auto take_b_side = [&](const ComponentView& c, TraceStep& st) {
    for (auto b : c.b_vertices) col.add(Side::B, b, st);
  };

  for (;;) {
    const std::size_t n0 = iso_a.size() - next_a;
    if (n0 <= 3) {
      auto st = detail::make_step(view, "base");
      const auto sub = view.materialize();
      const auto r = bounded_degree_solve(sub.graph, base);
      out.heuristic = out.heuristic || r.heuristic;
      col.add_all(sub.lift(r.bihole), st);
      out.trace.push_back(std::move(st));
      break;
    }
    if (next_b < iso_b.size()) {
      TraceStep st;
      st.action = "isolated-pair";
      take_isolated_a(1, st);
      const Vertex v = iso_b[next_b++];
      col.add(Side::B, v, st);
      detail::remove_logged(view, st, Side::B, v);
      detail::refresh(st, view);
      out.trace.push_back(std::move(st));
      continue;
    }
    if (deficient.size() < 4) throw std::logic_error("fewer B-deficient components than isolated A-vertices");
    const auto a = [&](std::size_t k) { return deficient[k]->a_size(); };

    std::optional<std::size_t> pair;
    if (a(0) % 2 != a(1) % 2) pair = 0;
    else if (a(2) % 2 != a(3) % 2) pair = 2;

    TraceStep st;
    if (pair) {
      st.action = "different-parity";
      const ComponentView& gx = *deficient[*pair];
      const ComponentView& gy = *deficient[*pair + 1];
      take_isolated_a(2, st);
      take_b_side(gx, st);
      take_split(gy, (gy.a_size() + gx.a_size() - 1) / 2, st);
      remove_component(gx, st);
      remove_component(gy, st);
      deficient.erase(deficient.begin() + static_cast<std::ptrdiff_t>(*pair),
                      deficient.begin() + static_cast<std::ptrdiff_t>(*pair + 2));
    } else {
      st.action = "same-parity";
      take_isolated_a(4, st);
      take_b_side(*deficient[0], st);
      take_split(*deficient[1], (a(0) + a(1)) / 2, st);
      take_b_side(*deficient[2], st);
      take_split(*deficient[3], (a(2) + a(3) - 2) / 2, st);
      for (std::size_t k = 0; k < 4; ++k) remove_component(*deficient[k], st);
      deficient.erase(deficient.begin(), deficient.begin() + 4);
    }
    detail::refresh(st, view);
    out.trace.push_back(std::move(st));
  }

  out.bihole = col.finish();
  if (out.bihole.s.size() != out.bihole.t.size() || !is_bihole(g, out.bihole))
    throw std::logic_error("profile012 produced an invalid bihole");
  return out;
}

/// Biholes for balanced graphs with average degree d = m/n, reaching
/// n/(d+1) - 2 (d taken on the input graph).
///
/// Per step, with d recomputed on the current sub-instance: A-degrees <= 1
/// (or B-degrees <= 1, sides swapped) go to bihole_delta1; a maximum
/// A-degree in [2, d+1) (or the B-side analogue) goes to the bounded-degree
/// solver; otherwise a maximum-degree A-vertex and a maximum-degree B-vertex,
/// both of degree >= d+1, are deleted and the step repeats.
inline GuaranteedBihole bihole_avg_degree(const BipartiteGraph& g,
                                          const BoundedDegreeSolver& base = {}) {
  if (!g.balanced()) throw precondition_error("average-degree construction needs a balanced graph");
  GuaranteedBihole out;
  out.algorithm = "avg";
  const auto n = static_cast<std::int64_t>(g.n_a());
  out.guarantee = avg_degree_bound(n, g.average_degree()).value;

  SubgraphView view(g);
  detail::Collector col;
  const auto pick_max = [&](Side side) {
    Vertex best = UINT32_MAX;
    std::size_t best_deg = 0;
    for (auto v : view.vertices(side))
      if (best == UINT32_MAX || view.degree(side, v) > best_deg) {
        best = v;
        best_deg = view.degree(side, v);
      }
    return best;
  };

  while (view.n_a() > 0) {
    const auto n_cur = static_cast<std::int64_t>(view.n_a());
    const Rational d(static_cast<std::int64_t>(view.m()), n_cur);
    const auto delta_a = static_cast<std::int64_t>(view.max_degree(Side::A));
    const auto delta_b = static_cast<std::int64_t>(view.max_degree(Side::B));

    const auto finish_with = [&](const char* action, bool swap, bool via_delta1) {
      auto st = detail::make_step(view, action);
      const auto sub = view.materialize();
      const auto host = swap ? sub.graph.swapped() : sub.graph;
      auto r = via_delta1 ? bihole_delta1(host) : bounded_degree_solve(host, base);
      out.heuristic = out.heuristic || r.heuristic;
      const Bihole local = swap ? r.bihole.swapped() : r.bihole;
      col.add_all(sub.lift(local), st);
      out.trace.push_back(std::move(st));
    };

    if (delta_a <= 1) { finish_with("delta1", false, true); break; }
    if (delta_b <= 1) { finish_with("delta1-swapped", true, true); break; }
    if (Rational(delta_a) < d + 1) { finish_with("base", false, false); break; }
    if (Rational(delta_b) < d + 1) { finish_with("base-swapped", true, false); break; }

    TraceStep st;
    st.action = "strip-pair";
    detail::remove_logged(view, st, Side::A, pick_max(Side::A));
    detail::remove_logged(view, st, Side::B, pick_max(Side::B));
    detail::refresh(st, view);
    out.trace.push_back(std::move(st));
  }

  out.bihole = col.finish();
  if (!is_bihole(g, out.bihole)) throw std::logic_error("average-degree construction produced an invalid bihole");
  return out;
}

/// Biholes for balanced graphs with at most 2n edges, reaching (n-2)/3.
///
/// Each induction step adds one A- and one B-vertex to the bihole and deletes
/// 2 or 3 vertices per side:
///  - isolated vertex on one side (u), a minimum-degree vertex v opposite,
///    u' = largest-degree vertex with N(v) ⊆ {u'}, v' of maximum degree;
///    delete {u, v, u', v'} and add u, v;
///  - non-adjacent degree-1 pair u in A, v in B with neighbours v', u';
///    delete {u, v, u', v'} when u' or v' has degree >= 3, and otherwise
///    additionally a maximum-degree vertex per side; add u, v;
///  - unique, adjacent degree-1 vertices u, v: a degree-2 vertex u' in A with
///    neighbours v', v'' and a maximum-degree u'' in A are deleted with u, v;
///    add v, u'.
/// Ties go to the smallest index. Once a side has maximum degree <= 2 the
/// bounded-degree solver finishes. The edge budget m' <= 2n' is checked at
/// every step; if it fails, the exact solver finishes the sub-instance and a
/// "fallback-exact" step is logged.
inline GuaranteedBihole bihole_avg2(const BipartiteGraph& g, const BoundedDegreeSolver& base = {}) {
  if (!g.balanced()) throw precondition_error("avg2 construction needs a balanced graph");
  if (g.n_a() < 2) throw precondition_error("avg2 construction needs n >= 2");
  if (g.m() > 2 * g.n_a()) throw precondition_error("avg2 construction needs at most 2n edges");

  GuaranteedBihole out;
  out.algorithm = "avg2";
  out.guarantee = avg2_bound(static_cast<std::int64_t>(g.n_a())).value;

  SubgraphView view(g);
  detail::Collector col;
  const auto other = [](Side s) { return s == Side::A ? Side::B : Side::A; };
  // smallest-index vertex of `side` maximizing degree among those passing `ok`
  const auto pick = [&](Side side, auto ok) {
    Vertex best = UINT32_MAX;
    for (auto v : view.vertices(side))
      if (ok(v) && (best == UINT32_MAX || view.degree(side, v) > view.degree(side, best))) best = v;
    return best;
  };
  const auto pick_degree = [&](Side side, std::size_t deg) {
    for (auto v : view.vertices(side))
      if (view.degree(side, v) == deg) return v;
    return UINT32_MAX;
  };
  const auto delegate = [&](const char* action, bool swap, bool exact) {
    auto st = detail::make_step(view, action);
    const auto sub = view.materialize();
    Bihole local;
    if (exact) {
      ExactOptions opts;
      opts.node_budget = base.node_budget;
      opts.initial = detail::greedy_local_search(sub.graph);
      local = max_bihole(sub.graph, opts).witness;
    } else {
      const auto host = swap ? sub.graph.swapped() : sub.graph;
      auto r = bounded_degree_solve(host, base);
      out.heuristic = out.heuristic || r.heuristic;
      local = swap ? r.bihole.swapped() : r.bihole;
    }
    col.add_all(sub.lift(local), st);
    out.trace.push_back(std::move(st));
  };

  for (;;) {
    const std::size_t n = view.n_a();
    if (n <= 2) break;
    if (view.m() > 2 * n) { delegate("fallback-exact", false, true); break; }
    if (view.max_degree(Side::A) <= 2) { delegate("base", false, false); break; }
    if (view.max_degree(Side::B) <= 2) { delegate("base-swapped", true, false); break; }

    TraceStep st;
    const auto add_remove = [&](std::initializer_list<std::pair<Side, Vertex>> adds,
                                std::initializer_list<std::pair<Side, Vertex>> removes) {
      for (auto [side, v] : adds) col.add(side, v, st);
      for (auto [side, v] : removes) detail::remove_logged(view, st, side, v);
    };

    std::optional<Side> iso_side;
    if (view.min_degree(Side::A) == 0) iso_side = Side::A;
    else if (view.min_degree(Side::B) == 0) iso_side = Side::B;

    if (iso_side) {
      const Side x = *iso_side, y = other(x);
      st.action = x == Side::A ? "isolated" : "isolated-swapped";
      const Vertex u = pick_degree(x, 0);
      const Vertex v = pick_degree(y, view.min_degree(y));
      const auto nv = view.alive_neighbors(y, v);
      const Vertex u2 = pick(x, [&](Vertex w) {
        return w != u && (nv.empty() || (nv.size() == 1 && nv.front() == w));
      });
      const Vertex v2 = pick(y, [&](Vertex w) { return w != v; });
      add_remove({{x, u}, {y, v}}, {{x, u}, {y, v}, {x, u2}, {y, v2}});
    } else {
      // both minimum degrees are 1
      Vertex u = UINT32_MAX, v = UINT32_MAX;
      for (auto a : view.vertices(Side::A)) {
        if (view.degree(Side::A, a) != 1 || u != UINT32_MAX) continue;
        const Vertex nb = view.alive_neighbors(Side::A, a).front();
        for (auto b : view.vertices(Side::B))
          if (view.degree(Side::B, b) == 1 && b != nb) {
            u = a;
            v = b;
            break;
          }
      }
      if (u != UINT32_MAX) {
        const Vertex v1 = view.alive_neighbors(Side::A, u).front();
        const Vertex u1 = view.alive_neighbors(Side::B, v).front();
        if (view.degree(Side::A, u1) >= 3 || view.degree(Side::B, v1) >= 3) {
          st.action = "pair-4";
          add_remove({{Side::A, u}, {Side::B, v}},
                     {{Side::A, u}, {Side::B, v}, {Side::A, u1}, {Side::B, v1}});
        } else {
          st.action = "pair-6";
          const Vertex u2 = pick(Side::A, [&](Vertex w) { return w != u && w != u1; });
          const Vertex v2 = pick(Side::B, [&](Vertex w) { return w != v && w != v1; });
          add_remove({{Side::A, u}, {Side::B, v}}, {{Side::A, u}, {Side::B, v}, {Side::A, u1},
                                                    {Side::B, v1}, {Side::A, u2}, {Side::B, v2}});
        }
      } else {
        u = pick_degree(Side::A, 1);
        v = pick_degree(Side::B, 1);
        const Vertex u1 = pick_degree(Side::A, 2);
        if (u1 == UINT32_MAX) { delegate("fallback-exact", false, true); break; }
        st.action = "adjacent-6";
        const auto nb = view.alive_neighbors(Side::A, u1);
        const Vertex u2 = pick(Side::A, [&](Vertex w) { return w != u && w != u1; });
        add_remove({{Side::B, v}, {Side::A, u1}}, {{Side::A, u}, {Side::B, v}, {Side::A, u1},
                                                  {Side::B, nb[0]}, {Side::B, nb[1]}, {Side::A, u2}});
      }
    }
    detail::refresh(st, view);
    out.trace.push_back(std::move(st));
  }

  out.bihole = col.finish();
  if (!is_bihole(g, out.bihole)) throw std::logic_error("avg2 construction produced an invalid bihole");
  return out;
}

/// Re-applies the logged removals to g and checks that each step is legal
/// and leaves a sub-instance of the recorded size.
inline bool replay_trace(const BipartiteGraph& g, const std::vector<TraceStep>& trace) {
  SubgraphView view(g);
  for (const auto& st : trace) {
    for (auto a : st.removed_a) {
      if (a >= g.n_a() || !view.alive(Side::A, a)) return false;
      view.remove(Side::A, a);
    }
    for (auto b : st.removed_b) {
      if (b >= g.n_b() || !view.alive(Side::B, b)) return false;
      view.remove(Side::B, b);
    }
    if (view.n_a() != st.n_a_after || view.n_b() != st.n_b_after || view.m() != st.m_after) return false;
  }
  return true;
}

}  // namespace bihole
