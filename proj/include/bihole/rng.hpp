#pragma once

// Portable seeded randomness.
//
// Every random stream is a std::mt19937_64 whose seed is derived with
// derive_seed(seed, stream, index). The engine's output sequence is fixed by
// the C++ standard; the integer/real/Bernoulli mappings below are spelled out
// here instead of using <random> distributions, whose algorithms are
// implementation-defined. Together this makes corpora reproducible across
// platforms and across re-implementations of the report format.

#include "bihole/rational.hpp"

#include <cstdint>
#include <random>

namespace bihole::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Named sub-streams. Values are part of the reproducibility contract.
enum class Stream : std::uint64_t {
  bounded_vertex = 1,  // gen_random_bounded, one stream per A-vertex
  edge_sample = 2,     // gen_random_edges
  b_sample = 3,        // randomized pipeline, one stream per attempt
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(stream))) + index);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Engine(derive_seed(seed, stream, index));
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);  // multiple of bound
  for (;;) {
    const std::uint64_t x = eng();
    if (limit == 0 || x < limit) return x % bound;
  }
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Exact Bernoulli trial for a rational probability in [0, 1].
inline bool bernoulli(Engine& eng, const Rational& prob) {
  if (prob <= 0) return false;
  if (prob >= 1) return true;
  return uniform_below(eng, static_cast<std::uint64_t>(prob.denominator())) <
         static_cast<std::uint64_t>(prob.numerator());
}

/// Bernoulli trial for a real probability.
inline bool bernoulli(Engine& eng, double prob) { return uniform01(eng) < prob; }

}  // namespace bihole::rng
