#pragma once

// Exact polynomial types over Q:
//   UPoly    univariate, dense, used for characteristic/minimal polynomials
//            and as numerator/denominator of RatFunc;
//   MPoly    multivariate, sparse, used for the symbolic Kostant slice;
//   RatFunc  Q(z), used by the cyclic-vector elimination.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/linalg.hpp"
#include "loopalg/rational.hpp"

namespace loopalg {

class UPoly {
 public:
  UPoly() = default;
  UPoly(int c) : UPoly(Rational(c)) {}  // NOLINT: implicit for Matrix<F>
  UPoly(const Rational& c);             // NOLINT
  explicit UPoly(std::vector<Rational> coeffs);  // low degree first

  static UPoly monomial(int degree, const Rational& c = 1);

  /// -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws std::domain_error on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly derivative() const;
  UPoly monic() const;
  Rational eval(const Rational& x) const;

  /// p(M) by Horner's scheme.
  Matrix<Rational> eval(const Matrix<Rational>& m) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);

/// p / gcd(p, p'), monic.
UPoly squarefree_part(const UPoly& p);

class MPoly {
 public:
  using Monomial = std::vector<int>;

  MPoly() = default;
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT
  MPoly(const Rational& c);             // NOLINT

  static MPoly variable(int index, int nvars);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree under integer weights w (weight of variable i is w[i]).
  bool is_weighted_homogeneous(const std::vector<int>& w, int degree) const;

  /// Coefficient of a monomial (zero vector of the given size if absent).
  Rational coeff(const Monomial& mono) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const MPoly& b) { return a *= b; }
  friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  /// Evaluation at values of any commutative Q-algebra R with R(1) and
  /// R * Rational.
  template <class R>
  R eval(const std::vector<R>& values) const {
    R out(0);
    for (const auto& [mono, c] : terms_) {
      R term(1);
      for (std::size_t i = 0; i < mono.size(); ++i)
        for (int k = 0; k < mono[i]; ++k) term = term * values[i];
      out = out + term * c;
    }
    return out;
  }

  std::string str() const;

 private:
  // Monomials are stored with trailing zeros stripped so that constants from
  // different variable counts compare equal.
  static Monomial normalize(Monomial m);
  std::map<Monomial, Rational> terms_;
};

class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}             // NOLINT
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(UPoly num, UPoly den);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc derivative() const;
  std::string str(const std::string& var = "z") const;

 private:
  UPoly num_, den_;  // gcd 1, den monic
};

}  // namespace loopalg
