#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bihole {

using Rational = boost::rational<std::int64_t>;

/// Largest integer <= r.
inline std::int64_t floor_of(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator();  // always positive
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

/// Smallest integer >= r.
inline std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

/// ceil(max(r, 0)): the order a certificate must reach for a guarantee r.
inline std::int64_t required_order(const Rational& r) {
  return r <= 0 ? 0 : ceil_of(r);
}

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Accepts "p", "p/q" and finite decimals such as "0.25".
inline Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  const auto to_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw bad();
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != s.size()) throw bad();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = to_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(to_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    auto frac = text.substr(dot + 1);
    if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos)
      throw bad();
    const bool negative = !text.empty() && text.front() == '-';
    const auto whole_text = text.substr(0, dot);
    const std::int64_t whole =
        (whole_text.empty() || whole_text == "-") ? 0 : to_int(whole_text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t f = frac.empty() ? 0 : to_int(frac);
    Rational mag = Rational(whole < 0 ? -whole : whole) + Rational(f, scale);
    return negative ? -mag : mag;
  }
  return Rational(to_int(text));
}

}  // namespace bihole
