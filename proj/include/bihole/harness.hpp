#pragma once

// Verification harness: expands a corpus description into graphs, runs the
// requested constructions, the exact solver and the closed-form bounds on
// each, and reconciles bound <= constructed <= exact.
//
// Config format (one directive per line, '#' starts a comment):
//   family extremal-paths i=2,4
//   family random-delta n=12 delta=2 p=1/2 seeds=1..100
//   family random-edges n=15 m=30 seeds=1..10      (or d=2 for m = floor(d n))
//   family file path=graphs/c8.txt                 (relative to the config)
//   algorithms = delta1,profile012,avg,avg2,bounded,rand3
//   exact_budget = 10000000      (0 disables the exact solver)
//   exact_max_n = 40             (larger graphs skip the exact solver)
//   epsilon = 1/10
//   rand_seed = 1
//   rand_retries = 100
//   base = certified | heuristic
// Integer values accept comma lists and inclusive ranges a..b; every family
// expands to the cartesian product of its values.

#include "bihole/bounds.hpp"
#include "bihole/constructive.hpp"
#include "bihole/exact.hpp"
#include "bihole/generators.hpp"
#include "bihole/graph.hpp"
#include "bihole/io.hpp"
#include "bihole/randomized.hpp"
#include "bihole/rational.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bihole {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"delta1", "profile012", "avg", "avg2", "bounded", "rand3"};
  return names;
}

struct GraphSpec {
  std::string id;
  std::string family;
  std::map<std::string, std::string> params;
};

struct RunConfig {
  std::vector<GraphSpec> corpus;
  std::vector<std::string> algorithms = known_algorithms();
  std::uint64_t exact_budget = 10'000'000;
  std::size_t exact_max_n = 40;
  unsigned exact_threads = 1;
  Rational epsilon{1, 10};
  std::uint64_t rand_seed = 1;
  std::size_t rand_retries = 100;
  SolverMode base = SolverMode::certified;
  /// Graph-level worker threads; 0 means hardware concurrency.
  unsigned workers = 1;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline std::uint64_t to_u64(const std::string& s, const std::string& ctx) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (!s.empty() && s.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size()) throw config_error(ctx + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

/// "1..3,7" -> {"1","2","3","7"}; non-integer items pass through.
inline std::vector<std::string> expand_values(const std::string& raw, const std::string& ctx) {
  std::vector<std::string> out;
  for (const auto& item : split(raw, ',')) {
    if (item.empty()) throw config_error(ctx + ": empty list item");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(item);
      continue;
    }
    const auto lo = to_u64(item.substr(0, dots), ctx);
    const auto hi = to_u64(item.substr(dots + 2), ctx);
    if (hi < lo) throw config_error(ctx + ": empty range " + item);
    if (hi - lo > 10'000'000) throw config_error(ctx + ": range too large " + item);
    for (auto v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  }
  return out;
}

inline const std::vector<std::string>& family_keys(const std::string& family) {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"extremal-paths", {"i"}},
      {"random-delta", {"n", "delta", "p", "seeds"}},
      {"random-edges", {"n", "m", "d", "seeds"}},
      {"file", {"path"}},
  };
  const auto it = keys.find(family);
  if (it == keys.end()) throw config_error("unknown family '" + family + "'");
  return it->second;
}

inline std::vector<GraphSpec> expand_family(const std::string& family,
                                            const std::map<std::string, std::string>& raw,
                                            const std::string& ctx) {
  const auto& keys = family_keys(family);
  for (const auto& [k, v] : raw)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw config_error(ctx + ": unknown key '" + k + "' for family " + family);
  const auto require = [&](const char* k) {
    if (!raw.count(k)) throw config_error(ctx + ": family " + family + " needs " + k + "=");
  };
  if (family == "extremal-paths") require("i");
  if (family == "random-delta") {
    require("n");
    require("delta");
    require("seeds");
  }
  if (family == "random-edges") {
    require("n");
    require("seeds");
    if (raw.count("m") == raw.count("d")) throw config_error(ctx + ": random-edges needs exactly one of m= or d=");
  }
  if (family == "file") require("path");

  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& k : keys) {
    const auto it = raw.find(k);
    if (it == raw.end()) continue;
    axes.emplace_back(k == "seeds" ? "seed" : k, k == "path" ? std::vector<std::string>{it->second}
                                                             : expand_values(it->second, ctx));
  }
  std::vector<GraphSpec> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    GraphSpec spec;
    spec.family = family;
    spec.id = family;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      spec.params[axes[k].first] = axes[k].second[idx[k]];
      spec.id += ":" + axes[k].first + "=" + axes[k].second[idx[k]];
    }
    out.push_back(std::move(spec));
    std::size_t k = axes.size();
    while (k > 0) {
      if (++idx[k - 1] < axes[k - 1].second.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace detail

/// Parses the config text; `base_dir` resolves relative file paths.
inline RunConfig parse_run_config(std::string_view text, const std::string& base_dir = ".") {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string ctx = "config line " + std::to_string(line_no);
    if (line.rfind("family", 0) == 0 && (line.size() == 6 || line[6] == ' ' || line[6] == '\t')) {
      std::istringstream parts(line.substr(6));
      std::string family, tok;
      parts >> family;
      if (family.empty()) throw config_error(ctx + ": family name missing");
      std::map<std::string, std::string> raw;
      while (parts >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw config_error(ctx + ": expected key=value, got '" + tok + "'");
        raw[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      if (family == "file" && raw.count("path")) {
        const std::filesystem::path p(raw["path"]);
        if (p.is_relative()) raw["path"] = (std::filesystem::path(base_dir) / p).lexically_normal().string();
      }
      for (auto& spec : detail::expand_family(family, raw, ctx)) cfg.corpus.push_back(std::move(spec));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error(ctx + ": expected 'key = value' or 'family ...'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& a : detail::split(value, ',')) {
        const auto& known = known_algorithms();
        if (std::find(known.begin(), known.end(), a) == known.end())
          throw config_error(ctx + ": unknown algorithm '" + a + "'");
        cfg.algorithms.push_back(a);
      }
    } else if (key == "exact_budget") {
      cfg.exact_budget = detail::to_u64(value, ctx);
    } else if (key == "exact_max_n") {
      cfg.exact_max_n = detail::to_u64(value, ctx);
    } else if (key == "exact_threads") {
      cfg.exact_threads = static_cast<unsigned>(detail::to_u64(value, ctx));
    } else if (key == "epsilon") {
      try {
        cfg.epsilon = parse_rational(value);
      } catch (const std::exception& e) {
        throw config_error(ctx + ": " + e.what());
      }
    } else if (key == "rand_seed") {
      cfg.rand_seed = detail::to_u64(value, ctx);
    } else if (key == "rand_retries") {
      cfg.rand_retries = detail::to_u64(value, ctx);
    } else if (key == "base") {
      if (value == "certified") cfg.base = SolverMode::certified;
      else if (value == "heuristic") cfg.base = SolverMode::heuristic;
      else throw config_error(ctx + ": base must be certified or heuristic");
    } else {
      throw config_error(ctx + ": unknown key '" + key + "'");
    }
  }
  if (cfg.corpus.empty()) throw config_error("config defines no graphs");
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_run_config(buf.str(), dir.empty() ? "." : dir.string());
}

/// Materializes one corpus entry.
inline BipartiteGraph build_from_spec(const GraphSpec& spec) {
  const auto num = [&](const char* k) { return static_cast<std::int64_t>(detail::to_u64(spec.params.at(k), spec.id)); };
  if (spec.family == "extremal-paths") return gen_extremal_paths(num("i"));
  if (spec.family == "random-delta") {
    const Rational p = spec.params.count("p") ? parse_rational(spec.params.at("p")) : Rational(1);
    return gen_random_bounded(num("n"), num("delta"), p, static_cast<std::uint64_t>(num("seed")));
  }
  if (spec.family == "random-edges") {
    const auto n = num("n");
    const std::int64_t m = spec.params.count("m") ? num("m") : floor_of(parse_rational(spec.params.at("d")) * n);
    return gen_random_edges(n, m, static_cast<std::uint64_t>(num("seed")));
  }
  if (spec.family == "file") return read_graph_file(spec.params.at("path"));
  throw config_error("unknown family '" + spec.family + "'");
}

enum class CheckStatus { pass, fail, skip, soft, info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::soft: return "soft";
    case CheckStatus::info: return "info";
  }
  return "?";
}

struct AlgorithmEntry {
  std::string algorithm;
  CheckStatus status = CheckStatus::skip;
  std::string reason;
  Rational guarantee{0};
  std::optional<std::size_t> constructed;
  bool valid = false;
  bool replay_ok = false;
  bool heuristic = false;
  std::optional<SamplingTranscript> transcript;
};

struct BoundEntry {
  BoundValue bound;
  /// Whether the value caps the order from above (checked against exact and constructed).
  bool upper = false;
  CheckStatus status = CheckStatus::info;
};

struct Check {
  std::string name;
  CheckStatus status;
};

struct VerificationRecord {
  std::string graph_id;
  std::size_t n_a = 0, n_b = 0, m = 0;
  Rational d_avg{0};
  std::size_t delta_a = 0;
  std::size_t n0 = 0, n1 = 0, n2 = 0, n3 = 0;  // n3 counts degree >= 3
  std::vector<AlgorithmEntry> entries;
  std::vector<BoundEntry> bounds;
  std::optional<std::size_t> exact_order;
  bool exact_optimal = false;
  std::string exact_reason;
  std::vector<Check> checks;
  /// Set when the graph itself could not be built.
  std::string error;

  bool failed() const {
    if (!error.empty()) return true;
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return true;
    return false;
  }
};

struct VerificationSummary {
  std::size_t graphs = 0;
  std::size_t pass = 0, fail = 0, skip = 0, soft = 0;
  bool ok() const { return fail == 0; }
};

namespace detail {

/// Precondition failure message for running `alg` on g, or empty when it applies.
inline std::string precondition_failure(const std::string& alg, const BipartiteGraph& g) {
  if (!g.balanced()) return "graph is not balanced";
  const auto da = g.max_degree(Side::A);
  if (alg == "delta1" && da > 1) return "A-degree above 1";
  if (alg == "profile012" && da > 2) return "A-degree above 2";
  if (alg == "avg2" && g.n_a() < 2) return "n below 2";
  if (alg == "avg2" && g.m() > 2 * g.n_a()) return "more than 2n edges";
  if (alg == "bounded" && g.n_a() < 2) return "n below 2";
  if (alg == "rand3" && da > 3) return "A-degree above 3";
  return {};
}

inline AlgorithmEntry run_algorithm(const std::string& alg, const BipartiteGraph& g, const RunConfig& cfg) {
  AlgorithmEntry e;
  e.algorithm = alg;
  if (auto why = precondition_failure(alg, g); !why.empty()) {
    e.reason = why;
    return e;
  }
  BoundedDegreeSolver base;
  base.mode = cfg.base;
  try {
    GuaranteedBihole r;
    if (alg == "delta1") r = bihole_delta1(g);
    else if (alg == "profile012") r = bihole_profile012(g, base);
    else if (alg == "avg") r = bihole_avg_degree(g, base);
    else if (alg == "avg2") r = bihole_avg2(g, base);
    else if (alg == "bounded") r = bounded_degree_solve(g, base);
    else if (alg == "rand3") {
      SamplingParams params;
      params.epsilon = cfg.epsilon;
      params.seed = cfg.rand_seed;
      params.max_retries = cfg.rand_retries;
      auto rr = bihole_random3(g, params, base);
      r = std::move(rr.result);
      e.transcript = rr.transcript;
    } else {
      throw config_error("unknown algorithm '" + alg + "'");
    }
    e.guarantee = r.guarantee;
    e.constructed = r.bihole.order();
    e.valid = is_bihole(g, r.bihole) && r.bihole.s.size() == r.bihole.t.size();
    e.replay_ok = replay_trace(g, r.trace);
    e.heuristic = r.heuristic;
    const bool meets = r.meets_guarantee();
    if (!e.valid || !e.replay_ok) {
      e.status = CheckStatus::fail;
      e.reason = !e.valid ? "invalid bihole" : "trace replay mismatch";
    } else if (!meets) {
      e.status = e.heuristic ? CheckStatus::soft : CheckStatus::fail;
      e.reason = "order below guarantee";
    } else {
      e.status = CheckStatus::pass;
    }
  } catch (const sampling_error& ex) {
    e.status = CheckStatus::fail;
    e.reason = ex.what();
    e.transcript = ex.transcript();
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& ex) {
    e.status = CheckStatus::fail;
    e.reason = ex.what();
  }
  return e;
}

/// Closed-form bounds that apply to g, lower bounds first.
inline std::vector<BoundEntry> applicable_bounds(const BipartiteGraph& g, const GraphSpec& spec) {
  std::vector<BoundEntry> out;
  if (!g.balanced()) return out;
  const auto n = static_cast<std::int64_t>(g.n_a());
  const auto da = static_cast<std::int64_t>(g.max_degree(Side::A));
  const auto prof = degree_profile(g, Side::A);
  const auto push = [&](BoundValue b, bool upper = false) {
    if (b.applicable) out.push_back({std::move(b), upper, CheckStatus::info});
  };
  if (da <= 2) push(f2_value(n));
  if (da >= 2) push(delta_floor_bound(n, da));
  push(avg_degree_bound(n, g.average_degree()));
  if (g.m() <= 2 * g.n_a()) push(avg2_bound(n));
  if (da <= 1) push(profile01_bound(static_cast<std::int64_t>(prof.n0()), static_cast<std::int64_t>(prof.n1())));
  if (da <= 2)
    push(profile012_bound(static_cast<std::int64_t>(prof.n0()), static_cast<std::int64_t>(prof.n1()),
                          static_cast<std::int64_t>(prof.n2())));
  if (spec.family == "extremal-paths") push(extremal_upper(static_cast<std::int64_t>(detail::to_u64(spec.params.at("i"), spec.id))), true);
  if (da <= 3) push(f3_window(n).lower_new);
  push(asymp_avg_bound(static_cast<double>(n), to_double(g.average_degree())));
  return out;
}

}  // namespace detail

inline VerificationRecord verify_graph(const GraphSpec& spec, const RunConfig& cfg) {
  VerificationRecord rec;
  rec.graph_id = spec.id;
  BipartiteGraph g;
  try {
    g = build_from_spec(spec);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& ex) {
    rec.error = ex.what();
    rec.checks.push_back({"build", CheckStatus::fail});
    return rec;
  }
  rec.n_a = g.n_a();
  rec.n_b = g.n_b();
  rec.m = g.m();
  rec.d_avg = g.n_a() ? g.average_degree() : Rational(0);
  rec.delta_a = g.max_degree(Side::A);
  const auto prof = degree_profile(g, Side::A);
  rec.n0 = prof.n0();
  rec.n1 = prof.n1();
  rec.n2 = prof.n2();
  rec.n3 = prof.at_least(3);

  Bihole best;
  for (const auto& alg : cfg.algorithms) {
    rec.entries.push_back(detail::run_algorithm(alg, g, cfg));
    rec.checks.push_back({"guarantee:" + alg, rec.entries.back().status});
  }

  if (cfg.exact_budget == 0) {
    rec.exact_reason = "exact solver disabled";
  } else if (std::max(g.n_a(), g.n_b()) > cfg.exact_max_n) {
    rec.exact_reason = "graph larger than exact_max_n";
  } else {
    ExactOptions opts;
    opts.node_budget = cfg.exact_budget;
    opts.threads = cfg.exact_threads;
    opts.initial = detail::greedy_local_search(g);
    const auto r = max_bihole(g, opts);
    rec.exact_order = r.order;
    rec.exact_optimal = r.optimal;
    if (!r.optimal) rec.exact_reason = "node budget exhausted";
    const bool witness_ok = is_bihole(g, r.witness) && r.witness.order() == r.order;
    rec.checks.push_back({"exact-witness", witness_ok ? CheckStatus::pass : CheckStatus::fail});
  }

  // constructed <= exact, only meaningful once exact is optimal
  for (const auto& e : rec.entries) {
    if (!e.constructed) continue;
    CheckStatus s = CheckStatus::skip;
    if (rec.exact_order && rec.exact_optimal) s = *e.constructed <= *rec.exact_order ? CheckStatus::pass : CheckStatus::fail;
    rec.checks.push_back({"le-exact:" + e.algorithm, s});
  }

  rec.bounds = detail::applicable_bounds(g, spec);
  for (auto& b : rec.bounds) {
    if (b.bound.asymptotic) {
      b.status = CheckStatus::info;
    } else if (b.upper) {
      bool ok = true;
      if (rec.exact_order) ok = ok && static_cast<std::int64_t>(*rec.exact_order) <= floor_of(b.bound.value);
      for (const auto& e : rec.entries)
        if (e.constructed) ok = ok && static_cast<std::int64_t>(*e.constructed) <= floor_of(b.bound.value);
      b.status = ok ? CheckStatus::pass : CheckStatus::fail;
    } else if (rec.exact_order) {
      const bool ok = static_cast<std::int64_t>(*rec.exact_order) >= required_order(b.bound.value);
      // a short incumbent from an unfinished search proves nothing
      b.status = ok ? CheckStatus::pass : (rec.exact_optimal ? CheckStatus::fail : CheckStatus::skip);
    } else {
      b.status = CheckStatus::skip;
    }
    rec.checks.push_back({"bound:" + b.bound.name, b.status});
  }
  return rec;
}

/// Worker count from BIHOLE_WORKERS, else hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("BIHOLE_WORKERS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs every corpus graph; records come back in corpus order.
inline std::vector<VerificationRecord> run_verification(const RunConfig& cfg, VerificationSummary* summary = nullptr) {
  std::vector<VerificationRecord> records(cfg.corpus.size());
  const unsigned workers = std::max(1U, cfg.workers == 0 ? default_workers() : cfg.workers);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= records.size()) return;
      try {
        records[i] = verify_graph(cfg.corpus[i], cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = records.size();
      }
    }
  };
  if (workers == 1 || records.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, records.size()); ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (summary) {
    *summary = {};
    summary->graphs = records.size();
    for (const auto& r : records)
      for (const auto& c : r.checks) {
        switch (c.status) {
          case CheckStatus::pass: ++summary->pass; break;
          case CheckStatus::fail: ++summary->fail; break;
          case CheckStatus::skip: ++summary->skip; break;
          case CheckStatus::soft: ++summary->soft; break;
          case CheckStatus::info: break;
        }
      }
  }
  return records;
}

inline constexpr const char* csv_header =
    "graph_id,n_a,n_b,m,d_avg,delta_a,n0,n1,n2,n3,algorithm,guarantee,constructed,exact,optimal,pass";

/// One row per algorithm entry, then one "bound:<name>" row per applicable bound.
inline std::string to_csv(const std::vector<VerificationRecord>& records) {
  std::string out = std::string(csv_header) + "\n";
  for (const auto& r : records) {
    const std::string prefix = r.graph_id + "," + std::to_string(r.n_a) + "," + std::to_string(r.n_b) + "," +
                               std::to_string(r.m) + "," + to_string(r.d_avg) + "," + std::to_string(r.delta_a) +
                               "," + std::to_string(r.n0) + "," + std::to_string(r.n1) + "," + std::to_string(r.n2) +
                               "," + std::to_string(r.n3) + ",";
    const std::string exact = r.exact_order ? std::to_string(*r.exact_order) : "";
    const std::string optimal = r.exact_order ? (r.exact_optimal ? "true" : "false") : "";
    if (!r.error.empty()) {
      out += r.graph_id + ",,,,,,,,,,build,,,,,fail\n";
      continue;
    }
    for (const auto& e : r.entries) {
      out += prefix + e.algorithm + "," + (e.status == CheckStatus::skip ? "" : to_string(e.guarantee)) + "," +
             (e.constructed ? std::to_string(*e.constructed) : "") + "," + exact + "," + optimal + "," +
             to_string(e.status) + "\n";
    }
    for (const auto& b : r.bounds)
      out += prefix + "bound:" + b.bound.name + "," + to_string(b.bound) + ",," + exact + "," + optimal + "," +
             to_string(b.status) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SamplingTranscript& t) {
  return {{"b_large_size", t.b_large_size}, {"n1", t.n1},
          {"b1", t.b1},                     {"n0_2", t.n0_2},
          {"n3_2", t.n3_2},                 {"retries_used", t.retries_used},
          {"accepted", t.accepted},         {"removed_r", t.removed_r},
          {"n_after_trim", t.n3_side}};
}

inline nlohmann::ordered_json to_json(const VerificationRecord& r) {
  nlohmann::ordered_json j;
  j["graph_id"] = r.graph_id;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  j["n_a"] = r.n_a;
  j["n_b"] = r.n_b;
  j["m"] = r.m;
  j["d_avg"] = to_string(r.d_avg);
  j["delta_a"] = r.delta_a;
  j["profile"] = {{"n0", r.n0}, {"n1", r.n1}, {"n2", r.n2}, {"n3", r.n3}};
  auto algs = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json a;
    a["algorithm"] = e.algorithm;
    a["pass"] = to_string(e.status);
    if (e.status != CheckStatus::skip) a["guarantee"] = to_string(e.guarantee);
    if (e.constructed) a["constructed"] = *e.constructed;
    if (!e.reason.empty()) a["reason"] = e.reason;
    if (e.heuristic) a["heuristic"] = true;
    if (e.transcript) a["transcript"] = to_json(*e.transcript);
    algs.push_back(std::move(a));
  }
  j["algorithms"] = std::move(algs);
  if (r.exact_order) {
    j["exact"] = *r.exact_order;
    j["optimal"] = r.exact_optimal;
  }
  if (!r.exact_reason.empty()) j["exact_reason"] = r.exact_reason;
  auto bounds = nlohmann::ordered_json::array();
  for (const auto& b : r.bounds) {
    nlohmann::ordered_json x;
    x["name"] = b.bound.name;
    x["value"] = to_string(b.bound);
    if (b.bound.asymptotic) x["asymptotic"] = true;
    if (b.upper) x["upper"] = true;
    x["pass"] = to_string(b.status);
    bounds.push_back(std::move(x));
  }
  j["bounds"] = std::move(bounds);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", to_string(c.status)}});
  j["checks"] = std::move(checks);
  return j;
}

inline std::string to_json_report(const std::vector<VerificationRecord>& records, const VerificationSummary& s) {
  nlohmann::ordered_json j;
  j["columns"] = csv_header;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  j["records"] = std::move(arr);
  j["summary"] = {{"graphs", s.graphs}, {"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}, {"soft", s.soft}};
  return j.dump(2) + "\n";
}

struct SweepRow {
  std::size_t n = 0;
  std::size_t runs = 0;
  std::size_t accepted = 0;
  double median = 0, mean = 0, min = 0, max = 0;
};

struct SweepConfig {
  std::vector<std::size_t> sizes{500, 1000, 2000, 5000};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::int64_t delta = 3;
  Rational edge_prob{1};
  Rational epsilon{1, 10};
  std::size_t max_retries = 100;
  unsigned workers = 1;
};

/// Achieved rand3 order / n per size over the given seeds. Each seed drives
/// both the graph and the sampling stream.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (auto n : cfg.sizes) {
    std::vector<std::optional<double>> ratios(cfg.seeds.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
      for (;;) {
        const auto k = next.fetch_add(1);
        if (k >= cfg.seeds.size()) return;
        const auto g = gen_random_bounded(static_cast<std::int64_t>(n), cfg.delta, cfg.edge_prob, cfg.seeds[k]);
        SamplingParams params;
        params.epsilon = cfg.epsilon;
        params.seed = cfg.seeds[k];
        params.max_retries = cfg.max_retries;
        try {
          const auto r = bihole_random3(g, params);
          ratios[k] = static_cast<double>(r.result.bihole.order()) / static_cast<double>(n);
        } catch (const sampling_error&) {
        }
      }
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.seeds.size())));
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    SweepRow row;
    row.n = n;
    row.runs = cfg.seeds.size();
    std::vector<double> ok;
    for (const auto& r : ratios)
      if (r) ok.push_back(*r);
    row.accepted = ok.size();
    if (!ok.empty()) {
      std::sort(ok.begin(), ok.end());
      const auto h = ok.size() / 2;
      row.median = ok.size() % 2 ? ok[h] : (ok[h - 1] + ok[h]) / 2;
      double sum = 0;
      for (auto x : ok) sum += x;
      row.mean = sum / static_cast<double>(ok.size());
      row.min = ok.front();
      row.max = ok.back();
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,runs,accepted,median_ratio,mean_ratio,min_ratio,max_ratio\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + std::to_string(r.runs) + "," + std::to_string(r.accepted) + "," +
           format_real(r.median) + "," + format_real(r.mean) + "," + format_real(r.min) + "," + format_real(r.max) +
           "\n";
  return out;
}

/// Sizes at which the median ratio drops by more than `tolerance` from the previous size.
inline std::vector<std::size_t> sweep_dips(const std::vector<SweepRow>& rows, double tolerance) {
  std::vector<std::size_t> dips;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].median + tolerance < rows[k - 1].median) dips.push_back(rows[k].n);
  return dips;
}

}  // namespace bihole
