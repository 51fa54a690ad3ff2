#pragma once

#include <gmpxx.h>

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace osg {

/// Exact scalar field. mpq_class arithmetic always yields canonical values.
using Rational = mpq_class;

/// num/den in canonical form. Prefer this to the two-argument mpq_class
/// constructor, which does not reduce.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical "p/q" form, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern{R"(-?[0-9]+(/[0-9]+)?)"};
  std::string s{text};
  if (!std::regex_match(s, pattern)) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  Rational r;
  r.set_str(s, 10);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace osg
