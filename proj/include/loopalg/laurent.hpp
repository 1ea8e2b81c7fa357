#pragma once

// Rational Laurent polynomials in t with an explicit truncation window.
//
// A LaurentPoly with window [lo, hi] stands for an element of Q((t)) whose
// coefficients below lo are known to vanish and whose coefficients above hi
// are unknown. Exact polynomials have hi == kInfinity. Reading a coefficient
// above hi throws WindowUnderflow.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "loopalg/linalg.hpp"
#include "loopalg/rational.hpp"

namespace loopalg {

using Exponent = std::int64_t;

inline constexpr Exponent kInfinity = Exponent(1) << 60;

/// Saturating sum: anything plus kInfinity is kInfinity.
inline Exponent sat_add(Exponent a, Exponent b) {
  if (a >= kInfinity || b >= kInfinity) return kInfinity;
  return a + b;
}

class LaurentPoly {
 public:
  /// Exact zero.
  LaurentPoly() = default;
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT: ring literal
  LaurentPoly(const Rational& c);                    // NOLINT

  /// c * t^k, exact.
  static LaurentPoly monomial(Exponent k, const Rational& c = 1);
  /// Exact element from its terms.
  static LaurentPoly exact(const std::map<Exponent, Rational>& terms);
  /// Element known on [lo, hi]; terms outside the window are rejected.
  static LaurentPoly truncated(const std::map<Exponent, Rational>& terms, Exponent lo,
                               Exponent hi);

  Exponent lo() const { return lo_; }
  Exponent hi() const { return hi_; }
  bool is_exact() const { return hi_ >= kInfinity; }
  /// Exact zero, or known zero across the whole window.
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  /// Coefficient of t^k; zero below lo, WindowUnderflow above hi.
  Rational coeff(Exponent k) const;

  /// t-adic valuation; kInfinity for exact zero; WindowUnderflow when every
  /// known coefficient vanishes but the window is finite.
  Exponent valuation() const;

  /// Narrows the window to [lo, min(hi, new_hi)].
  LaurentPoly truncate(Exponent new_hi) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }

  /// Equal windows and equal coefficients.
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.terms_ == b.terms_;
  }

  /// Multiplication by t^k.
  LaurentPoly shift(Exponent k) const;
  /// t d/dt.
  LaurentPoly euler_derivative() const;
  /// d/dt.
  LaurentPoly derivative() const;
  /// Substitution t -> 1/t; exact inputs only.
  LaurentPoly invert_variable() const;

  /// "3*t^-2 + 5 + O(t^4)".
  std::string str(const std::string& var = "t") const;

 private:
  void normalize();
  std::map<Exponent, Rational> terms_;
  Exponent lo_ = kInfinity;
  Exponent hi_ = kInfinity;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << f.str(); }

/// Coefficient of t^0: the residue of f * dt/t.
Rational residue(const LaurentPoly& f);

/// Substitution t = u^h.
LaurentPoly ramified_pullback(const LaurentPoly& f, int h);

/// Parses the text form produced by LaurentPoly::str.
LaurentPoly parse_laurent(const std::string& text, const std::string& var = "t");

/// A g-valued (or g*-valued) form sum_b value[b] X_b (dt/t)^form_degree.
struct TwistedElement {
  std::vector<LaurentPoly> value;
  int form_degree = 0;

  friend bool operator==(const TwistedElement& a, const TwistedElement& b) {
    return a.form_degree == b.form_degree && a.value == b.value;
  }
};

/// t = u^h on every coordinate; (dt/t)^k = h^k (du/u)^k.
TwistedElement ramified_pullback(const TwistedElement& x, int h);

/// Per-degree pole-order bounds against (dt/t)^{d_i}.
struct OrderBound {
  std::vector<Exponent> b;

  friend bool operator==(const OrderBound&, const OrderBound&) = default;
  /// Componentwise comparison.
  friend bool operator<=(const OrderBound& x, const OrderBound& y);
  OrderBound meet(const OrderBound& o) const;
  OrderBound join(const OrderBound& o) const;
};

using LaurentMatrix = Matrix<LaurentPoly>;

}  // namespace loopalg
