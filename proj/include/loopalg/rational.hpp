#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace loopalg {

using Rational = mpq_class;

/// Canonical text form: "p" or "p/q" with q > 0.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// floor(a/b) and ceil(a/b) for b > 0.
inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace loopalg
