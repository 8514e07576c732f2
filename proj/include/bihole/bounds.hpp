#pragma once

// Closed-form bihole bounds as exact rationals.
//
// Formulas return raw values: possibly negative, possibly fractional.
// Rounding to an integer order happens where a bound is compared against a
// certificate (see required_order in rational.hpp). Formulas that only hold
// asymptotically carry asymptotic = true and must not be asserted on a single
// instance.

#include "bihole/rational.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace bihole {

struct BoundValue {
  std::string name;
  /// Exact value; meaningful when is_exact.
  Rational value{0};
  /// Floating-point value (always filled; exact ones are converted).
  double real = 0.0;
  bool is_exact = true;
  bool applicable = true;
  bool asymptotic = false;
  /// Why the formula does not apply, when !applicable.
  std::string reason;

  static BoundValue exact(std::string name, Rational v) {
    BoundValue b;
    b.name = std::move(name);
    b.value = v;
    b.real = to_double(v);
    return b;
  }
  static BoundValue approximate(std::string name, double v) {
    BoundValue b;
    b.name = std::move(name);
    b.real = v;
    b.is_exact = false;
    return b;
  }
  static BoundValue not_applicable(std::string name, std::string why) {
    BoundValue b;
    b.name = std::move(name);
    b.applicable = false;
    b.reason = std::move(why);
    return b;
  }
};

/// ceil(n/2) - 1: the minimum bihole order over balanced graphs with A-degrees <= 2.
inline BoundValue f2_value(std::int64_t n) {
  if (n < 2) return BoundValue::not_applicable("f2", "needs n >= 2");
  return BoundValue::exact("f2", Rational((n + 1) / 2 - 1));
}

/// floor((n-2)/delta) for A-degrees <= delta.
inline BoundValue delta_floor_bound(std::int64_t n, std::int64_t delta) {
  if (delta < 2 || n < delta) return BoundValue::not_applicable("delta-floor", "needs n >= delta >= 2");
  return BoundValue::exact("delta-floor", Rational(floor_of(Rational(n - 2, delta))));
}

/// n/(d+1) - 2 for graphs with at most dn edges.
inline BoundValue avg_degree_bound(std::int64_t n, const Rational& d) {
  if (d < 0) return BoundValue::not_applicable("avg-degree", "needs d >= 0");
  return BoundValue::exact("avg-degree", Rational(n) / (d + 1) - 2);
}

/// (n-2)/3 for graphs with at most 2n edges.
inline BoundValue avg2_bound(std::int64_t n) {
  if (n < 2) return BoundValue::not_applicable("avg2", "needs n >= 2");
  return BoundValue::exact("avg2", Rational(n - 2, 3));
}

/// n0 + n1/2 - 1/2 for A-degrees <= 1.
inline BoundValue profile01_bound(std::int64_t n0, std::int64_t n1) {
  if (n0 < 0 || n1 < 0) return BoundValue::not_applicable("profile01", "counts must be non-negative");
  return BoundValue::exact("profile01", Rational(n0) + Rational(n1, 2) - Rational(1, 2));
}

/// 3/4 n0 + 1/2 (n1 + n2) - 7/4 for A-degrees <= 2.
inline BoundValue profile012_bound(std::int64_t n0, std::int64_t n1, std::int64_t n2) {
  if (n0 < 0 || n1 < 0 || n2 < 0)
    return BoundValue::not_applicable("profile012", "counts must be non-negative");
  return BoundValue::exact("profile012",
                           Rational(3 * n0, 4) + Rational(n1 + n2, 2) - Rational(7, 4));
}

/// floor(i^2 + 3i/4): largest possible bihole order in the extremal paths graph.
inline BoundValue extremal_upper(std::int64_t i) {
  if (i < 2 || i % 2 != 0) return BoundValue::not_applicable("extremal-upper", "needs an even i >= 2");
  return BoundValue::exact("extremal-upper", Rational(floor_of(Rational(i * i) + Rational(3 * i, 4))));
}

struct F3Window {
  BoundValue lower_old;  // 0.3411 n
  BoundValue lower_new;  // 0.34917 n
  BoundValue upper;      // 0.4591 n
};

/// Reference window for f(n,3); every entry is asymptotic.
inline F3Window f3_window(std::int64_t n) {
  auto make = [n](const char* name, Rational c) {
    auto b = BoundValue::exact(name, c * n);
    b.asymptotic = true;
    return b;
  };
  return {make("f3-lower-old", Rational(3411, 10000)), make("f3-lower-new", Rational(34917, 100000)),
          make("f3-upper", Rational(4591, 10000))};
}

/// n ln(d) / (8d); asymptotic, reporting only.
inline BoundValue asymp_avg_bound(double n, double d) {
  if (!(d > 1.0)) return BoundValue::not_applicable("asymp-avg", "needs d > 1");
  auto b = BoundValue::approximate("asymp-avg", n * std::log(d) / (8.0 * d));
  b.asymptotic = true;
  return b;
}

/// Real root of p = (1-p)^3, i.e. of p^3 - 3p^2 + 4p - 1 on (0, 1).
///
/// The cubic is strictly increasing (derivative 3(p-1)^2 + 1 > 0), so the
/// root is unique. Newton iteration bracketed to [0, 1].
inline double solve_p_fixed_point(double tolerance = 1e-12) {
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  const auto f = [](double p) {
    const double q = 1.0 - p;
    return std::make_pair(p * p * p - 3 * p * p + 4 * p - 1, 3 * q * q + 1);
  };
  const int digits = std::min(std::numeric_limits<double>::digits,
                              static_cast<int>(std::ceil(-std::log2(tolerance))) + 8);
  std::uintmax_t iterations = 100;
  return boost::math::tools::newton_raphson_iterate(f, 0.3, 0.0, 1.0, digits, iterations);
}

/// 1 / (2 ln 8): the upper end of the admissible epsilon range.
inline double epsilon_limit() { return 1.0 / (2.0 * std::log(8.0)); }

/// 3/4 (p^3 - eps) + 1/2 (1 - p^3 - p); decreasing in eps with slope -3/4.
inline double theorem1_constant(const Rational& epsilon) {
  const double eps = to_double(epsilon);
  if (epsilon < 0 || !(eps < epsilon_limit()))
    throw std::domain_error("epsilon must lie in [0, 1/(2 ln 8))");
  const double p = solve_p_fixed_point(1e-15);
  const double p3 = p * p * p;
  return 0.75 * (p3 - eps) + 0.5 * (1.0 - p3 - p);
}

/// Formats a real with 12 significant digits.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Value as a report string: "p/q" for exact bounds, 12 significant digits otherwise.
inline std::string to_string(const BoundValue& b) {
  if (!b.applicable) return "n/a";
  return b.is_exact ? to_string(b.value) : format_real(b.real);
}

}  // namespace bihole
