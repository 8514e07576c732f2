// bihole: command-line front end for the bihole library.
//
// Exit status: 0 success, 1 a hard check failed, 2 usage or input error.

#include "bihole/bihole.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace bihole;

constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

std::string join(const std::vector<Vertex>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out;
}

void print_bihole(const Bihole& h) {
  std::cout << "S=" << join(h.s) << "\nT=" << join(h.t) << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& raw) {
  std::vector<std::uint64_t> out;
  for (const auto& v : detail::expand_values(raw, "list")) out.push_back(detail::to_u64(v, "list"));
  return out;
}

SolverMode parse_mode(const std::string& s) {
  if (s == "certified") return SolverMode::certified;
  if (s == "heuristic") return SolverMode::heuristic;
  throw input_error("base must be certified or heuristic");
}

struct GenArgs {
  std::string family, out;
  std::int64_t i = 2, n = 10, delta = 3, m = -1;
  std::string p = "1", d;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a) {
  BipartiteGraph g;
  if (a.family == "extremal-paths") {
    g = gen_extremal_paths(a.i);
  } else if (a.family == "random-delta") {
    g = gen_random_bounded(a.n, a.delta, parse_rational(a.p), a.seed);
  } else if (a.family == "random-edges") {
    if ((a.m >= 0) == !a.d.empty()) throw input_error("random-edges needs exactly one of --m or --d");
    const auto m = a.m >= 0 ? a.m : floor_of(parse_rational(a.d) * a.n);
    g = gen_random_edges(a.n, m, a.seed);
  } else {
    throw input_error("unknown family '" + a.family + "'");
  }
  write_text(a.out, serialize_graph(g));
  return 0;
}

int cmd_exact(const std::string& file, std::uint64_t budget, unsigned threads, bool deterministic) {
  const auto g = read_graph_file(file);
  ExactOptions opts;
  opts.node_budget = budget;
  opts.threads = deterministic ? 1 : threads;
  const auto r = max_bihole(g, opts);
  std::cout << "order=" << r.order << " optimal=" << (r.optimal ? "true" : "false") << "\n";
  print_bihole(r.witness);
  std::cout << "nodes=" << r.nodes_explored << "\n";
  return 0;
}

int cmd_construct(const std::string& alg, const std::string& file, const std::string& mode) {
  const auto g = read_graph_file(file);
  BoundedDegreeSolver base;
  base.mode = parse_mode(mode);
  GuaranteedBihole r;
  if (alg == "delta1") r = bihole_delta1(g);
  else if (alg == "profile012") r = bihole_profile012(g, base);
  else if (alg == "avg") r = bihole_avg_degree(g, base);
  else if (alg == "avg2") r = bihole_avg2(g, base);
  else if (alg == "bounded") r = bounded_degree_solve(g, base);
  else throw input_error("unknown algorithm '" + alg + "'");
  const bool valid = is_bihole(g, r.bihole);
  const bool meets = r.meets_guarantee();
  std::cout << "order=" << r.bihole.order() << " guarantee=" << to_string(r.guarantee)
            << " valid=" << (valid ? "true" : "false") << " meets=" << (meets ? "true" : "false") << "\n";
  print_bihole(r.bihole);
  for (const auto& st : r.trace)
    std::cout << "step " << st.action << " -" << st.removed_a.size() << "A -" << st.removed_b.size() << "B +"
              << st.added_a.size() << "A +" << st.added_b.size() << "B -> " << st.n_a_after << "x" << st.n_b_after
              << " m=" << st.m_after << "\n";
  if (!valid || (!meets && !r.heuristic)) return exit_check_failed;
  return 0;
}

void print_transcript(const SamplingTranscript& t) {
  std::cout << "b_large=" << t.b_large_size << " n1=" << t.n1 << " b1=" << t.b1 << " n0_2=" << t.n0_2
            << " n3_2=" << t.n3_2 << " retries=" << t.retries_used << " accepted=" << (t.accepted ? "true" : "false")
            << "\n";
}

int cmd_rand3(const std::string& file, const std::string& eps, std::uint64_t seed, std::size_t retries,
              const std::string& mode) {
  const auto g = read_graph_file(file);
  SamplingParams params;
  params.epsilon = parse_rational(eps);
  params.seed = seed;
  params.max_retries = retries;
  BoundedDegreeSolver base;
  base.mode = parse_mode(mode);
  try {
    const auto r = bihole_random3(g, params, base);
    const bool valid = is_bihole(g, r.result.bihole);
    std::cout << "order=" << r.result.bihole.order() << " guarantee=" << to_string(r.result.guarantee)
              << " valid=" << (valid ? "true" : "false") << "\n";
    print_transcript(r.transcript);
    print_bihole(r.result.bihole);
    return valid && r.result.meets_guarantee() ? 0 : exit_check_failed;
  } catch (const sampling_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    print_transcript(e.transcript());
    return exit_check_failed;
  }
}

int cmd_verify(const std::string& config, const std::string& format, const std::string& report, bool deterministic) {
  auto cfg = load_run_config(config);
  cfg.workers = default_workers();
  if (deterministic) cfg.exact_threads = 1;
  VerificationSummary summary;
  const auto records = run_verification(cfg, &summary);
  write_text(report, format == "json" ? to_json_report(records, summary) : to_csv(records));
  std::cerr << "graphs=" << summary.graphs << " pass=" << summary.pass << " fail=" << summary.fail
            << " skip=" << summary.skip << " soft=" << summary.soft << "\n";
  return summary.ok() ? 0 : exit_check_failed;
}

int cmd_sweep(const std::string& ns, const std::string& seeds, std::int64_t delta, const std::string& eps,
              std::size_t retries, double tolerance, const std::string& out) {
  SweepConfig cfg;
  cfg.sizes.clear();
  for (auto n : parse_u64_list(ns)) cfg.sizes.push_back(static_cast<std::size_t>(n));
  cfg.seeds = parse_u64_list(seeds);
  cfg.delta = delta;
  cfg.epsilon = parse_rational(eps);
  cfg.max_retries = retries;
  cfg.workers = default_workers();
  const auto rows = run_sweep(cfg);
  write_text(out, sweep_csv(rows));
  const auto dips = sweep_dips(rows, tolerance);
  if (dips.empty()) {
    std::cerr << "trend: median ratio non-decreasing within " << tolerance << "\n";
  } else {
    std::cerr << "trend: median ratio dips at n =";
    for (auto n : dips) std::cerr << " " << n;
    std::cerr << " (soft check, not a failure)\n";
  }
  return 0;
}

struct BoundArgs {
  std::string formula;
  std::int64_t n = -1, delta = -1, n0 = 0, n1 = 0, n2 = 0, i = -1;
  std::string d, epsilon = "0";
  double tolerance = 1e-12;
};

int cmd_bounds(const BoundArgs& a) {
  const auto need = [](std::int64_t v, const char* flag) {
    if (v < 0) throw input_error(std::string("formula needs ") + flag);
    return v;
  };
  const auto show = [](const BoundValue& b) {
    std::cout << to_string(b);
    if (!b.applicable) std::cout << " (" << b.reason << ")";
    if (b.asymptotic) std::cout << " (asymptotic)";
    std::cout << "\n";
  };
  const auto& f = a.formula;
  if (f == "f2") show(f2_value(need(a.n, "--n")));
  else if (f == "delta-floor") show(delta_floor_bound(need(a.n, "--n"), need(a.delta, "--delta")));
  else if (f == "avg-degree") {
    if (a.d.empty()) throw input_error("formula needs --d");
    show(avg_degree_bound(need(a.n, "--n"), parse_rational(a.d)));
  } else if (f == "avg2") show(avg2_bound(need(a.n, "--n")));
  else if (f == "profile01") show(profile01_bound(a.n0, a.n1));
  else if (f == "profile012") show(profile012_bound(a.n0, a.n1, a.n2));
  else if (f == "extremal-upper") show(extremal_upper(need(a.i, "--i")));
  else if (f == "f3-window") {
    const auto w = f3_window(need(a.n, "--n"));
    std::cout << to_string(w.lower_old) << " " << to_string(w.lower_new) << " " << to_string(w.upper)
              << " (asymptotic)\n";
  } else if (f == "asymp-avg") {
    if (a.d.empty()) throw input_error("formula needs --d");
    show(asymp_avg_bound(static_cast<double>(need(a.n, "--n")), to_double(parse_rational(a.d))));
  } else if (f == "p") std::cout << format_real(solve_p_fixed_point(a.tolerance)) << "\n";
  else if (f == "theorem-constant") std::cout << format_real(theorem1_constant(parse_rational(a.epsilon))) << "\n";
  else throw input_error("unknown formula '" + f + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bihole workbench: exact search, constructions, bounds and verification"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
  gen_cmd->add_option("--family", gen.family, "extremal-paths | random-delta | random-edges")->required();
  gen_cmd->add_option("--i", gen.i, "path parameter (even, >= 2)");
  gen_cmd->add_option("--n", gen.n, "side size");
  gen_cmd->add_option("--delta", gen.delta, "maximum A-degree");
  gen_cmd->add_option("--p", gen.p, "edge probability per degree trial (rational)");
  gen_cmd->add_option("--m", gen.m, "edge count");
  gen_cmd->add_option("--d", gen.d, "average degree; m = floor(d n)");
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  std::string file, mode = "certified", alg;
  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
  bool deterministic = false;
  auto* exact_cmd = app.add_subcommand("exact", "Maximum bihole by branch and bound");
  exact_cmd->add_option("file", file, "graph file")->required();
  exact_cmd->add_option("--budget", budget, "node budget");
  exact_cmd->add_option("--threads", threads, "search threads (0 = all cores)");
  exact_cmd->add_flag("--deterministic", deterministic, "single-threaded search");

  auto* construct_cmd = app.add_subcommand("construct", "Run a guaranteed construction");
  construct_cmd->add_option("--alg", alg, "delta1 | profile012 | avg | avg2 | bounded")->required();
  construct_cmd->add_option("file", file, "graph file")->required();
  construct_cmd->add_option("--base", mode, "bounded-degree solver: certified | heuristic");

  std::string eps = "1/10";
  std::uint64_t seed = 1;
  std::size_t retries = 100;
  auto* rand_cmd = app.add_subcommand("rand3", "Randomized construction for A-degrees <= 3");
  rand_cmd->add_option("file", file, "graph file")->required();
  rand_cmd->add_option("--epsilon", eps, "epsilon (rational)");
  rand_cmd->add_option("--seed", seed, "sampling seed");
  rand_cmd->add_option("--retries", retries, "maximum sampling attempts");
  rand_cmd->add_option("--base", mode, "bounded-degree solver: certified | heuristic");

  std::string config, format = "csv", report;
  auto* verify_cmd = app.add_subcommand("verify", "Reconcile bounds, constructions and exact orders");
  verify_cmd->add_option("--config", config, "corpus config")->required();
  verify_cmd->add_option("--out", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  verify_cmd->add_option("--report", report, "report file (default stdout)");
  verify_cmd->add_flag("--deterministic", deterministic, "single-threaded exact search");

  std::string ns = "500,1000,2000,5000", seeds = "1..20";
  std::int64_t delta = 3;
  double tolerance = 0.005;
  auto* sweep_cmd = app.add_subcommand("sweep", "Achieved rand3 ratio per size");
  sweep_cmd->add_option("--ns", ns, "sizes, e.g. 500,1000");
  sweep_cmd->add_option("--seeds", seeds, "seeds, e.g. 1..20");
  sweep_cmd->add_option("--delta", delta, "A-degree of the random graphs");
  sweep_cmd->add_option("--epsilon", eps, "epsilon (rational)");
  sweep_cmd->add_option("--retries", retries, "maximum sampling attempts");
  sweep_cmd->add_option("--tolerance", tolerance, "allowed median drop between sizes");
  sweep_cmd->add_option("--report", report, "output file (default stdout)");

  BoundArgs b;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  bounds_cmd
      ->add_option("--formula", b.formula,
                   "f2 | delta-floor | avg-degree | avg2 | profile01 | profile012 | extremal-upper | f3-window | "
                   "asymp-avg | p | theorem-constant")
      ->required();
  bounds_cmd->add_option("--n", b.n, "n");
  bounds_cmd->add_option("--delta", b.delta, "maximum A-degree");
  bounds_cmd->add_option("--d", b.d, "average degree (rational)");
  bounds_cmd->add_option("--n0", b.n0, "isolated A-vertices");
  bounds_cmd->add_option("--n1", b.n1, "degree-1 A-vertices");
  bounds_cmd->add_option("--n2", b.n2, "degree-2 A-vertices");
  bounds_cmd->add_option("--i", b.i, "extremal family parameter");
  bounds_cmd->add_option("--epsilon", b.epsilon, "epsilon (rational)");
  bounds_cmd->add_option("--tolerance", b.tolerance, "root tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*exact_cmd) return cmd_exact(file, budget, threads, deterministic);
    if (*construct_cmd) return cmd_construct(alg, file, mode);
    if (*rand_cmd) return cmd_rand3(file, eps, seed, retries, mode);
    if (*verify_cmd) return cmd_verify(config, format, report, deterministic);
    if (*sweep_cmd) return cmd_sweep(ns, seeds, delta, eps, retries, tolerance, report);
    if (*bounds_cmd) return cmd_bounds(b);
  } catch (const std::invalid_argument& e) {
    // bad input: malformed values, unreadable files, unmet preconditions
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_usage;
}
