#pragma once

// Exact maximum-bihole computation.
//
// For S ⊆ A the best partner is B \ N(S), so the largest bihole order is
//   max over S ⊆ A of min(|S|, |B \ N(S)|).
// brute_force_oracle evaluates this over all subsets; max_bihole searches it
// with branch and bound.
//
// max_bihole splits the graph into components. Components with few A-vertices
// are enumerated exhaustively into a frontier F[a] = most B-vertices that can
// accompany exactly a chosen A-vertices. The remaining "core" is searched by
// inclusion/exclusion over A-vertices in descending-degree order, and a core
// state with s chosen vertices and p usable B-vertices is worth
//   value(s, p) = max_a min(s + a, p + F[a]),
// which is monotone in both arguments and reduces to min(s, p) when nothing
// was split off.

#include "bihole/bitset.hpp"
#include "bihole/graph.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bihole {

/// Instance exceeds a hard size cap of a solver.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct ExactOptions {
  std::uint64_t node_budget = 100'000'000;
  /// Worker threads for the core search; 0 means hardware concurrency.
  unsigned threads = 1;
  /// Warm-start incumbent; ignored unless it is a valid bihole of the graph.
  std::optional<Bihole> initial;
  /// Stop as soon as an incumbent of at least this order exists.
  std::optional<std::size_t> target;
  /// Enumerate small components separately instead of branching on them.
  bool decompose = true;
  /// Largest component A-size handled by enumeration.
  std::size_t enumeration_limit = 16;
};

struct ExactResult {
  std::size_t order = 0;
  Bihole witness;
  /// False when the search stopped early (budget or target); order is then a
  /// lower bound certified by the witness.
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  std::uint64_t budget = 0;
};

/// B \ N(s): every B-vertex independent from s.
inline std::vector<Vertex> complement_side(const BipartiteGraph& g, std::span<const Vertex> s) {
  std::vector<char> hit(g.n_b(), 0);
  for (auto a : s) {
    if (a >= g.n_a()) throw input_error("A-vertex out of range");
    for (auto b : g.neighbors_a(a)) hit[b] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex b = 0; b < g.n_b(); ++b)
    if (!hit[b]) out.push_back(b);
  return out;
}

namespace detail {

/// Lowest `order` indices of s paired with the lowest `order` indices of B \ N(s).
inline Bihole canonical_witness(const BipartiteGraph& g, std::vector<Vertex> s, std::size_t order) {
  std::sort(s.begin(), s.end());
  auto t = complement_side(g, s);
  if (s.size() < order || t.size() < order)
    throw std::logic_error("witness does not support the claimed order");
  s.resize(order);
  t.resize(order);
  return {std::move(s), std::move(t)};
}

}  // namespace detail

/// Exhaustive reference: Gray-code walk over all subsets of A with per-B
/// coverage counters. Refuses graphs with more than 20 A-vertices.
inline ExactResult brute_force_oracle(const BipartiteGraph& g) {
  constexpr std::size_t cap = 20;
  if (g.n_a() > cap)
    throw capacity_error("brute-force oracle is capped at 20 A-vertices (got " +
                         std::to_string(g.n_a()) + ")");
  const std::size_t n = g.n_a();
  std::vector<std::uint32_t> cover(g.n_b(), 0);
  std::size_t covered = 0;
  std::size_t chosen = 0;
  std::uint32_t mask = 0;
  std::size_t best = 0;
  std::uint32_t best_mask = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto bit = static_cast<Vertex>(std::countr_zero(step));
    const std::uint32_t flag = std::uint32_t{1} << bit;
    if (mask & flag) {
      mask ^= flag;
      --chosen;
      for (auto b : g.neighbors_a(bit))
        if (--cover[b] == 0) --covered;
    } else {
      mask |= flag;
      ++chosen;
      for (auto b : g.neighbors_a(bit))
        if (cover[b]++ == 0) ++covered;
    }
    const std::size_t value = std::min(chosen, g.n_b() - covered);
    if (value > best) {
      best = value;
      best_mask = mask;
    }
  }
  std::vector<Vertex> s;
  for (Vertex a = 0; a < n; ++a)
    if ((best_mask >> a) & 1U) s.push_back(a);
  ExactResult r;
  r.order = best;
  r.witness = detail::canonical_witness(g, std::move(s), best);
  r.optimal = true;
  r.nodes_explored = total;
  r.budget = total;
  return r;
}

namespace detail {

/// Small components merged into one frontier by knapsack-style DP.
class SmallPartFrontier {
 public:
  static constexpr std::int64_t infeasible = -1;

  void add(const BipartiteGraph& g, const ComponentView& c) {
    const std::size_t na = c.a_size();
    // local B indices for the component
    std::vector<std::uint32_t> cover(c.b_size(), 0);
    std::vector<std::vector<std::uint32_t>> nbr(na);
    for (std::size_t i = 0; i < na; ++i)
      for (auto b : g.neighbors_a(c.a_vertices[i])) {
        const auto it = std::lower_bound(c.b_vertices.begin(), c.b_vertices.end(), b);
        nbr[i].push_back(static_cast<std::uint32_t>(it - c.b_vertices.begin()));
      }
    std::vector<std::int64_t> best(na + 1, infeasible);
    std::vector<std::uint32_t> arg(na + 1, 0);
    best[0] = static_cast<std::int64_t>(c.b_size());
    std::size_t covered = 0, chosen = 0;
    std::uint32_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << na;
    for (std::uint64_t step = 1; step < total; ++step) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      const std::uint32_t flag = std::uint32_t{1} << bit;
      if (mask & flag) {
        mask ^= flag;
        --chosen;
        for (auto b : nbr[bit])
          if (--cover[b] == 0) --covered;
      } else {
        mask |= flag;
        ++chosen;
        for (auto b : nbr[bit])
          if (cover[b]++ == 0) ++covered;
      }
      const auto free_b = static_cast<std::int64_t>(c.b_size() - covered);
      if (free_b > best[chosen]) {
        best[chosen] = free_b;
        arg[chosen] = mask;
      }
    }

    // merge into the running DP
    std::vector<std::int64_t> merged(dp_.size() + na, infeasible);
    std::vector<std::uint32_t> pick(merged.size(), 0);
    for (std::size_t x = 0; x < dp_.size(); ++x) {
      if (dp_[x] == infeasible) continue;
      for (std::size_t k = 0; k <= na; ++k) {
        if (best[k] == infeasible) continue;
        const auto v = dp_[x] + best[k];
        if (v > merged[x + k]) {
          merged[x + k] = v;
          pick[x + k] = static_cast<std::uint32_t>(k);
        }
      }
    }
    dp_ = std::move(merged);
    parts_.push_back({c.a_vertices, std::move(arg), std::move(pick)});
  }

  /// F[a]; F[0] counts the split-off B-vertices.
  const std::vector<std::int64_t>& table() const { return dp_; }

  /// A-vertices realizing F[a].
  std::vector<Vertex> realize(std::size_t a) const {
    std::vector<Vertex> s;
    for (std::size_t i = parts_.size(); i-- > 0;) {
      const auto k = parts_[i].pick[a];
      const auto mask = parts_[i].arg[k];
      for (std::size_t j = 0; j < parts_[i].a_vertices.size(); ++j)
        if ((mask >> j) & 1U) s.push_back(parts_[i].a_vertices[j]);
      a -= k;
    }
    return s;
  }

 private:
  struct Part {
    std::vector<Vertex> a_vertices;
    std::vector<std::uint32_t> arg;   // subset mask achieving best[k]
    std::vector<std::uint32_t> pick;  // k chosen for this part at each merged total
  };
  std::vector<std::int64_t> dp_{0};
  std::vector<Part> parts_;
};

/// value(s, p) = s + K[p - s], tabulated over p - s.
class ValueTable {
 public:
  ValueTable(const std::vector<std::int64_t>& frontier, std::size_t max_s, std::size_t max_p)
      : offset_(static_cast<std::int64_t>(max_s)),
        k_(max_s + max_p + 1),
        arg_(max_s + max_p + 1, 0) {
    for (std::size_t idx = 0; idx < k_.size(); ++idx) {
      const std::int64_t c = static_cast<std::int64_t>(idx) - offset_;
      std::int64_t best = std::numeric_limits<std::int64_t>::min();
      for (std::size_t a = 0; a < frontier.size(); ++a) {
        if (frontier[a] < 0) continue;
        const auto v = std::min<std::int64_t>(static_cast<std::int64_t>(a), c + frontier[a]);
        if (v > best) {
          best = v;
          arg_[idx] = a;
        }
      }
      k_[idx] = best;
    }
  }

  std::int64_t value(std::int64_t s, std::int64_t p) const {
    return s + k_[static_cast<std::size_t>(p - s + offset_)];
  }
  /// Frontier size a realizing value(s, p).
  std::size_t split(std::int64_t s, std::int64_t p) const {
    return arg_[static_cast<std::size_t>(p - s + offset_)];
  }

 private:
  std::int64_t offset_;
  std::vector<std::int64_t> k_;
  std::vector<std::size_t> arg_;
};

struct SearchShared {
  std::atomic<std::int64_t> best{0};
  std::mutex mu;
  bool have_search_witness = false;
  std::vector<Vertex> core_s;  // host indices
  std::size_t small_a = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::uint64_t budget = 0;
  std::optional<std::int64_t> target;
};

struct SearchLevel {
  DynBitset pa;     // undecided core A (branching positions)
  DynBitset pb;     // core B still usable
  DynBitset freeb;  // core B \ N(S)
  std::int64_t s = 0;
};

struct SearchTask {
  SearchLevel level;
  std::vector<std::uint32_t> s_list;
};

/// Branch and bound over the core A-vertices.
class CoreSearch {
 public:
  CoreSearch(const std::vector<Vertex>& order_a, const std::vector<DynBitset>& nbr_a,
             const std::vector<DynBitset>& nbr_b, const ValueTable& table, SearchShared& shared)
      : order_a_(order_a), nbr_a_(nbr_a), nbr_b_(nbr_b), table_(table), shared_(shared) {
    levels_.resize(order_a.size() + 2);
  }

  /// Explores from `task`; when split_depth is set, nodes at that depth are
  /// emitted into `tasks` instead of being explored.
  void run(const SearchTask& task, std::optional<std::size_t> split_depth = std::nullopt,
           std::vector<SearchTask>* tasks = nullptr) {
    split_depth_ = split_depth;
    tasks_ = tasks;
    levels_[0] = task.level;
    s_list_ = task.s_list;
    explore(0);
    flush();
  }

 private:
  bool count_node() {
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    if (shared_.nodes.load(std::memory_order_relaxed) + pending_ >= shared_.budget) {
      shared_.exhausted.store(true);
      shared_.stop.store(true);
      return false;
    }
    if (++pending_ >= 256) flush();
    return true;
  }

  void flush() {
    shared_.nodes.fetch_add(pending_, std::memory_order_relaxed);
    pending_ = 0;
  }

  void record(const SearchLevel& L, std::int64_t free_count, std::int64_t val) {
    std::lock_guard lock(shared_.mu);
    if (val <= shared_.best.load()) return;
    shared_.best.store(val);
    shared_.have_search_witness = true;
    shared_.core_s.clear();
    for (auto v : s_list_) shared_.core_s.push_back(order_a_[v]);
    shared_.small_a = table_.split(L.s, free_count);
  }

  void explore(std::size_t depth) {
    if (split_depth_ && depth == *split_depth_) {
      tasks_->push_back({levels_[depth], s_list_});
      return;
    }
    if (!count_node()) return;
    SearchLevel& L = levels_[depth];
    const std::size_t s_mark = s_list_.size();

    for (;;) {
      const std::int64_t k = shared_.best.load(std::memory_order_relaxed) + 1;
      auto pa = static_cast<std::int64_t>(L.pa.count());
      auto pb = static_cast<std::int64_t>(L.pb.count());
      if (table_.value(L.s + pa, pb) < k) {
        s_list_.resize(s_mark);
        return;
      }
      bool changed = false;
      for (auto v = L.pa.first(); v < L.pa.size(); v = L.pa.next(v + 1)) {
        const auto c = static_cast<std::int64_t>(nbr_a_[v].count_and(L.pb));
        if (c == 0) {
          // free inclusion: v blocks nothing still usable
          L.pa.reset(v);
          ++L.s;
          --pa;
          s_list_.push_back(static_cast<std::uint32_t>(v));
          L.freeb.subtract(nbr_a_[v]);
          changed = true;
        } else if (table_.value(L.s + pa, pb - c) < k) {
          L.pa.reset(v);
          --pa;
          changed = true;
        }
      }
      for (auto w = L.pb.first(); w < L.pb.size(); w = L.pb.next(w + 1)) {
        const auto e = static_cast<std::int64_t>(nbr_b_[w].count_and(L.pa));
        if (table_.value(L.s + pa - e, pb) < k) {
          L.pb.reset(w);
          --pb;
          changed = true;
        }
      }
      if (!changed) break;
    }

    const auto free_count = static_cast<std::int64_t>(L.freeb.count());
    const auto val = table_.value(L.s, free_count);
    if (val > shared_.best.load(std::memory_order_relaxed)) record(L, free_count, val);
    if (shared_.target && shared_.best.load() >= *shared_.target) {
      shared_.stop.store(true);
      s_list_.resize(s_mark);
      return;
    }
    if (L.pa.none()) {
      s_list_.resize(s_mark);
      return;
    }

    const auto v = L.pa.first();
    SearchLevel& C = levels_[depth + 1];
    C = L;
    C.pa.reset(v);
    ++C.s;
    C.pb.subtract(nbr_a_[v]);
    C.freeb.subtract(nbr_a_[v]);
    s_list_.push_back(static_cast<std::uint32_t>(v));
    explore(depth + 1);
    s_list_.pop_back();

    C = L;
    C.pa.reset(v);
    explore(depth + 1);
    s_list_.resize(s_mark);
  }

  const std::vector<Vertex>& order_a_;
  const std::vector<DynBitset>& nbr_a_;
  const std::vector<DynBitset>& nbr_b_;
  const ValueTable& table_;
  SearchShared& shared_;
  std::vector<SearchLevel> levels_;
  std::vector<std::uint32_t> s_list_;
  std::uint64_t pending_ = 0;
  std::optional<std::size_t> split_depth_;
  std::vector<SearchTask>* tasks_ = nullptr;
};

}  // namespace detail

/// Maximum bihole by branch and bound. The witness is canonical: the lowest
/// `order` indices of the chosen A-set and of its B-complement.
inline ExactResult max_bihole(const BipartiteGraph& g, const ExactOptions& opts = {}) {
  using namespace detail;
  const auto comps = components(g);

  SmallPartFrontier frontier;
  std::vector<Vertex> core_a, core_b;
  for (const auto& c : comps) {
    if (opts.decompose && c.a_size() <= std::min<std::size_t>(opts.enumeration_limit, 24)) {
      frontier.add(g, c);
    } else {
      core_a.insert(core_a.end(), c.a_vertices.begin(), c.a_vertices.end());
      core_b.insert(core_b.end(), c.b_vertices.begin(), c.b_vertices.end());
    }
  }
  // descending degree, ties by index
  std::sort(core_a.begin(), core_a.end(), [&](Vertex x, Vertex y) {
    if (g.degree_a(x) != g.degree_a(y)) return g.degree_a(x) > g.degree_a(y);
    return x < y;
  });
  std::sort(core_b.begin(), core_b.end());

  const std::size_t na = core_a.size();
  const std::size_t nb = core_b.size();
  const ValueTable table(frontier.table(), na, nb);

  SearchShared shared;
  shared.budget = opts.node_budget;
  if (opts.target) shared.target = static_cast<std::int64_t>(*opts.target);

  // trivial incumbent: no core A-vertex, all core B usable
  shared.best = table.value(0, static_cast<std::int64_t>(nb));
  shared.have_search_witness = true;
  shared.small_a = table.split(0, static_cast<std::int64_t>(nb));

  std::optional<Bihole> warm;
  if (opts.initial && is_bihole(g, *opts.initial) &&
      static_cast<std::int64_t>(opts.initial->order()) > shared.best.load()) {
    warm = *opts.initial;
    warm->normalize();
    shared.best = static_cast<std::int64_t>(warm->order());
    shared.have_search_witness = false;
  }

  const bool target_met = shared.target && shared.best.load() >= *shared.target;
  if (na > 0 && !target_met) {
    std::vector<Vertex> local_b(g.n_b(), UINT32_MAX);
    for (std::size_t j = 0; j < nb; ++j) local_b[core_b[j]] = static_cast<Vertex>(j);
    std::vector<DynBitset> nbr_a(na, DynBitset(nb));
    std::vector<DynBitset> nbr_b(nb, DynBitset(na));
    for (std::size_t i = 0; i < na; ++i)
      for (auto b : g.neighbors_a(core_a[i])) {
        nbr_a[i].set(local_b[b]);
        nbr_b[local_b[b]].set(i);
      }

    SearchTask root;
    root.level.pa = DynBitset(na);
    root.level.pa.set_all();
    root.level.pb = DynBitset(nb);
    root.level.pb.set_all();
    root.level.freeb = root.level.pb;

    unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                         : opts.threads;
    if (threads <= 1) {
      CoreSearch(core_a, nbr_a, nbr_b, table, shared).run(root);
    } else {
      std::vector<SearchTask> tasks;
      const auto depth = static_cast<std::size_t>(std::bit_width(threads * 8U));
      CoreSearch(core_a, nbr_a, nbr_b, table, shared).run(root, depth, &tasks);
      std::atomic<std::size_t> next{0};
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
          pool.emplace_back([&] {
            CoreSearch worker(core_a, nbr_a, nbr_b, table, shared);
            for (std::size_t i = next++; i < tasks.size(); i = next++) {
              if (shared.stop.load()) break;
              worker.run(tasks[i]);
            }
          });
      }
    }
  }

  ExactResult r;
  r.order = static_cast<std::size_t>(shared.best.load());
  r.nodes_explored = shared.nodes.load();
  r.budget = opts.node_budget;
  r.optimal = !shared.stop.load() && !(target_met && na > 0);
  if (shared.have_search_witness) {
    auto s = shared.core_s;
    auto small = frontier.realize(shared.small_a);
    s.insert(s.end(), small.begin(), small.end());
    r.witness = canonical_witness(g, std::move(s), r.order);
  } else {
    r.witness = *warm;
  }
  return r;
}

}  // namespace bihole
