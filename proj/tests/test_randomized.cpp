#include "bihole/generators.hpp"
#include "bihole/randomized.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bihole {
namespace {

TEST(Concentration, BoundaryIsInclusive) {
  SamplingParams params;
  SamplingTranscript t;
  t.n1 = 1000;
  t.b1 = static_cast<std::size_t>(std::floor((params.p + 0.1) * 1000));
  t.n3_2 = t.b1;
  t.n0_2 = static_cast<std::size_t>(std::ceil((params.p * params.p * params.p - 0.1) * 1000));
  EXPECT_TRUE(check_concentration_sample(t, params));
  t.b1 += 1;
  EXPECT_FALSE(check_concentration_sample(t, params));
}

TEST(Concentration, RejectsFullSample) {
  SamplingParams params;
  params.epsilon = Rational(1, 100);
  SamplingTranscript t;
  t.n1 = 500;
  t.b1 = 500;
  t.n0_2 = 500;
  EXPECT_FALSE(check_concentration_sample(t, params));
}

TEST(Concentration, RejectsTooFewIsolated) {
  SamplingParams params;
  params.epsilon = Rational(1, 100);
  SamplingTranscript t;
  t.n1 = 1000;
  t.b1 = 300;
  t.n0_2 = 0;
  EXPECT_FALSE(check_concentration_sample(t, params));
}

TEST(Random3, EdgelessPipeline) {
  const auto g = testing::edgeless(100);
  SamplingParams params;
  params.epsilon = Rational(1, 5);
  params.seed = 7;
  const auto r = bihole_random3(g, params);
  EXPECT_EQ(r.transcript.b_large_size, 0U);
  EXPECT_EQ(r.transcript.n3_2, 0U);
  EXPECT_TRUE(r.transcript.accepted);
  EXPECT_EQ(r.result.bihole.order(), 100U - r.transcript.b1);
  EXPECT_TRUE(is_bihole(g, r.result.bihole));
}

TEST(Random3, ThreeRegularLarge) {
  const auto g = gen_random_bounded(2000, 3, Rational(1), 1);
  SamplingParams params;
  params.seed = 1;
  const auto r = bihole_random3(g, params);
  EXPECT_TRUE(r.transcript.accepted);
  EXPECT_TRUE(check_concentration_sample(r.transcript, params));
  EXPECT_TRUE(is_bihole(g, r.result.bihole));
  EXPECT_TRUE(r.result.meets_guarantee());
  EXPECT_TRUE(replay_trace(g, r.result.trace));
  EXPECT_LE(static_cast<double>(r.transcript.b_large_size), 3 * std::sqrt(2000.0) / std::pow(0.1, 1.5));
}

TEST(Random3, Deterministic) {
  const auto g = gen_random_bounded(600, 3, Rational(2, 3), 3);
  SamplingParams params;
  params.seed = 99;
  params.epsilon = Rational(1, 5);
  const auto a = bihole_random3(g, params);
  const auto b = bihole_random3(g, params);
  EXPECT_EQ(a.result.bihole.s, b.result.bihole.s);
  EXPECT_EQ(a.result.bihole.t, b.result.bihole.t);
  EXPECT_EQ(a.transcript.b1, b.transcript.b1);
  EXPECT_EQ(a.transcript.n0_2, b.transcript.n0_2);
  EXPECT_EQ(a.transcript.retries_used, b.transcript.retries_used);
}

TEST(Random3, SmallGraphsStayValid) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_random_bounded(5 + static_cast<std::int64_t>(seed % 40), 3, Rational(1, 2), seed);
    SamplingParams params;
    params.seed = seed;
    params.epsilon = Rational(1, 5);
    try {
      const auto r = bihole_random3(g, params);
      EXPECT_TRUE(is_bihole(g, r.result.bihole));
      EXPECT_TRUE(r.result.meets_guarantee());
    } catch (const sampling_error& e) {
      EXPECT_FALSE(e.transcript().accepted);
      EXPECT_EQ(e.transcript().retries_used, params.max_retries);
    }
  }
}

TEST(Random3, RetryExhaustionCarriesTranscript) {
  // no attempts allowed
  const auto g = gen_random_bounded(50, 3, Rational(1), 2);
  SamplingParams params;
  params.max_retries = 0;
  try {
    (void)bihole_random3(g, params);
    FAIL() << "expected sampling_error";
  } catch (const sampling_error& e) {
    EXPECT_FALSE(e.transcript().accepted);
    EXPECT_EQ(e.transcript().n1, 50U - e.transcript().b_large_size);
  }
}

TEST(Random3, Preconditions) {
  SamplingParams params;
  EXPECT_THROW(bihole_random3(testing::complete(4), params), precondition_error);
  EXPECT_THROW(bihole_random3(build_graph(2, 3, {}), params), precondition_error);
  params.epsilon = Rational(1, 4);
  EXPECT_THROW(bihole_random3(testing::edgeless(4), params), precondition_error);
  params.epsilon = Rational(0);
  EXPECT_THROW(bihole_random3(testing::edgeless(4), params), precondition_error);
  params.epsilon = Rational(1, 10);
  params.p = 0.3;
  EXPECT_THROW(bihole_random3(testing::edgeless(4), params), precondition_error);
}

TEST(Random3, AcceptanceRateCalibration) {
  // logged rather than asserted beyond a loose floor
  const auto g = gen_random_bounded(2000, 3, Rational(1), 5);
  std::size_t first_try = 0;
  const std::size_t trials = 40;
  for (std::uint64_t s = 0; s < trials; ++s) {
    SamplingParams params;
    params.seed = s;
    const auto r = bihole_random3(g, params);
    if (r.transcript.retries_used == 0) ++first_try;
  }
  RecordProperty("first_try_acceptance", static_cast<int>(first_try));
  EXPECT_GE(first_try * 2, trials);
}

}  // namespace
}  // namespace bihole
