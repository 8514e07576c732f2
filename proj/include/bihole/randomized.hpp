#pragma once

// Randomized reduction for balanced graphs with A-degrees at most 3.
//
// Stages, all on a SubgraphView of the input so the result needs no lifting:
//  1. delete high-degree B-vertices (B_large) and as many A-vertices,
//     highest remaining degree first;
//  2. sample B1 from the surviving B-vertices with probability p and delete it;
//  3. accept the sample when its counts satisfy the three concentration
//     inequalities, otherwise resample with a fresh stream;
//  4. delete r = max(b1, n3) A-vertices (degree 3 first, isolated last) and
//     r - b1 further B-vertices (highest degree first), leaving a balanced
//     graph with A-degrees <= 2;
//  5. run bihole_profile012 on what remains.

#include "bihole/bounds.hpp"
#include "bihole/constructive.hpp"
#include "bihole/graph.hpp"
#include "bihole/rational.hpp"
#include "bihole/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bihole {

struct SamplingParams {
  Rational epsilon{1, 10};
  double p = solve_p_fixed_point(1e-15);
  std::uint64_t seed = 0;
  std::size_t max_retries = 100;
};

struct SamplingTranscript {
  std::size_t b_large_size = 0;
  std::size_t n1 = 0;
  std::size_t b1 = 0;
  std::size_t n0_2 = 0;
  std::size_t n3_2 = 0;
  std::size_t retries_used = 0;
  bool accepted = false;
  // sizes after the final trimming stage
  std::size_t removed_r = 0;
  std::size_t n3_side = 0;
};

class sampling_error : public std::runtime_error {
 public:
  sampling_error(const std::string& what, SamplingTranscript t)
      : std::runtime_error(what), transcript_(t) {}
  const SamplingTranscript& transcript() const { return transcript_; }

 private:
  SamplingTranscript transcript_;
};

/// Validates epsilon and p.
inline void check_sampling_params(const SamplingParams& params) {
  const double eps = to_double(params.epsilon);
  if (!(params.epsilon > 0) || !(eps < epsilon_limit()))
    throw precondition_error("epsilon must lie in (0, 1/(2 ln 8))");
  const double q = 1.0 - params.p;
  if (!(std::abs(params.p - q * q * q) <= 1e-12)) throw precondition_error("p is not the root of p = (1-p)^3");
}

/// b1 <= (p+eps) n1, n0_2 >= (p^3-eps) n1 and n3_2 <= (p+eps) n1.
inline bool check_concentration_sample(const SamplingTranscript& t, const SamplingParams& params) {
  const double eps = to_double(params.epsilon);
  const double p = params.p;
  const double n1 = static_cast<double>(t.n1);
  return static_cast<double>(t.b1) <= (p + eps) * n1 &&
         static_cast<double>(t.n0_2) >= (p * p * p - eps) * n1 &&
         static_cast<double>(t.n3_2) <= (p + eps) * n1;
}

/// Degree threshold for B_large: vertices with degree above eps^{3/2} sqrt(n).
inline double b_large_threshold(std::size_t n, const Rational& epsilon) {
  return std::pow(to_double(epsilon), 1.5) * std::sqrt(static_cast<double>(n));
}

struct RandomizedResult {
  GuaranteedBihole result;
  SamplingTranscript transcript;
};

inline RandomizedResult bihole_random3(const BipartiteGraph& g, const SamplingParams& params,
                                       const BoundedDegreeSolver& base = {}) {
  if (!g.balanced()) throw precondition_error("randomized construction needs a balanced graph");
  if (g.max_degree(Side::A) > 3) throw precondition_error("randomized construction needs A-degrees <= 3");
  check_sampling_params(params);

  RandomizedResult out;
  auto& tr = out.transcript;
  auto& res = out.result;
  res.algorithm = "rand3";

  // descending degree in `view`, ties by index
  const auto by_degree_desc = [](const SubgraphView& view, Side side) {
    auto vs = view.vertices(side);
    std::stable_sort(vs.begin(), vs.end(),
                     [&](Vertex x, Vertex y) { return view.degree(side, x) > view.degree(side, y); });
    return vs;
  };

  // stage 1
  SubgraphView g1(g);
  TraceStep st1;
  st1.action = "drop-large";
  const double threshold = b_large_threshold(g.n_a(), params.epsilon);
  for (Vertex b = 0; b < g.n_b(); ++b)
    if (static_cast<double>(g.degree_b(b)) > threshold) detail::remove_logged(g1, st1, Side::B, b);
  tr.b_large_size = st1.removed_b.size();
  {
    const auto order = by_degree_desc(g1, Side::A);
    for (std::size_t k = 0; k < tr.b_large_size; ++k) detail::remove_logged(g1, st1, Side::A, order[k]);
  }
  detail::refresh(st1, g1);
  tr.n1 = g1.n_a();
  const auto small_b = g1.vertices(Side::B);

  // stages 2 and 3
  SubgraphView g2 = g1;
  TraceStep st2;
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt >= params.max_retries) {
      tr.retries_used = attempt;
      throw sampling_error("no sample passed the concentration checks within " +
                               std::to_string(params.max_retries) + " attempts",
                           tr);
    }
    g2 = g1;
    st2 = TraceStep{};
    st2.action = "sample";
    auto eng = rng::make_engine(params.seed, rng::Stream::b_sample, attempt);
    for (auto b : small_b)
      if (rng::bernoulli(eng, params.p)) detail::remove_logged(g2, st2, Side::B, b);
    const auto prof = g2.profile(Side::A);
    tr.b1 = st2.removed_b.size();
    tr.n0_2 = prof.n0();
    tr.n3_2 = prof.n3();
    tr.retries_used = attempt;
    if (check_concentration_sample(tr, params)) break;
  }
  tr.accepted = true;
  detail::refresh(st2, g2);

  // stage 4
  SubgraphView g3 = g2;
  TraceStep st3;
  st3.action = "trim";
  const std::size_t r = std::max(tr.b1, tr.n3_2);
  tr.removed_r = r;
  {
    // degree 3 first, then other non-isolated by degree, isolated last
    const auto order = by_degree_desc(g3, Side::A);
    for (std::size_t k = 0; k < r && k < order.size(); ++k) detail::remove_logged(g3, st3, Side::A, order[k]);
    const auto b_order = by_degree_desc(g3, Side::B);
    for (std::size_t k = 0; k + tr.b1 < r && k < b_order.size(); ++k)
      detail::remove_logged(g3, st3, Side::B, b_order[k]);
  }
  detail::refresh(st3, g3);
  tr.n3_side = g3.n_a();
  if (!g3.balanced() || g3.max_degree(Side::A) > 2)
    throw std::logic_error("trimmed sub-instance is unbalanced or has an A-degree above 2");

  // stage 5
  const auto sub = g3.materialize();
  auto inner = bihole_profile012(sub.graph, base);
  res.bihole = sub.lift(inner.bihole);
  res.guarantee = inner.guarantee;
  res.heuristic = inner.heuristic;
  res.trace = {st1, st2, st3};
  TraceStep st4 = detail::make_step(g3, "profile012");
  st4.added_a = res.bihole.s;
  st4.added_b = res.bihole.t;
  res.trace.push_back(std::move(st4));
  if (!is_bihole(g, res.bihole)) throw std::logic_error("randomized construction produced an invalid bihole");
  return out;
}

}  // namespace bihole
