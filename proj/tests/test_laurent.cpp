#include <doctest.h>

#include <algorithm>

#include "loopalg/errors.hpp"
#include "loopalg/laurent.hpp"
#include "loopalg/random.hpp"

using namespace loopalg;

namespace {

LaurentPoly t(Exponent k, const Rational& c = 1) { return LaurentPoly::monomial(k, c); }

LaurentPoly random_exact(SplitMix64& rng) {
  std::map<Exponent, Rational> terms;
  Exponent lo = rng.uniform(-3, 2);
  for (Exponent k = lo; k < lo + rng.uniform(1, 4); ++k) terms[k] = rng.rational();
  return LaurentPoly::exact(terms);
}

LaurentPoly random_truncated(SplitMix64& rng) {
  std::map<Exponent, Rational> terms;
  Exponent lo = rng.uniform(-3, 1);
  Exponent hi = lo + rng.uniform(0, 4);
  for (Exponent k = lo; k <= hi; ++k) terms[k] = rng.rational();
  terms[lo] = rng.nonzero_rational();
  return LaurentPoly::truncated(terms, lo, hi);
}

// Largest k such that the k-th product coefficient agrees for two random
// completions of the unknown tails, scanning a fixed range.
Exponent determined_up_to(const LaurentPoly& f, const LaurentPoly& g, SplitMix64& rng) {
  auto complete = [&](const LaurentPoly& x) {
    std::map<Exponent, Rational> terms = x.terms();
    for (Exponent k = x.hi() + 1; k <= x.hi() + 12; ++k) terms[k] = rng.nonzero_rational();
    return LaurentPoly::exact(terms);
  };
  Exponent best = -100;
  for (int trial = 0; trial < 4; ++trial) {
    LaurentPoly p1 = complete(f) * complete(g);
    LaurentPoly p2 = complete(f) * complete(g);
    Exponent k = -10;
    while (k < 10 && p1.coeff(k) == p2.coeff(k)) ++k;
    best = trial == 0 ? k - 1 : std::min(best, k - 1);
  }
  return best;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  CHECK((t(-1) + 1) * t(1) == 1 + t(1));
  CHECK((t(3) - t(5)).valuation() == 3);
  CHECK(LaurentPoly().valuation() == kInfinity);
  CHECK((t(2) - t(2)) == LaurentPoly());
  CHECK(t(0, 3) == LaurentPoly(3));
}

TEST_CASE("multiplication window against direct convolution") {
  std::map<Exponent, Rational> a{{-2, 1}, {0, 2}, {2, -1}};
  std::map<Exponent, Rational> b{{0, 3}, {1, 1}, {3, 5}};
  LaurentPoly f = LaurentPoly::truncated(a, -2, 2);
  LaurentPoly g = LaurentPoly::truncated(b, 0, 3);
  LaurentPoly p = f * g;
  SplitMix64 rng(11);
  CHECK(p.lo() == -2);
  CHECK(p.hi() == determined_up_to(f, g, rng));
  CHECK(p.hi() == 1);
  CHECK_THROWS_AS(p.coeff(2), WindowUnderflow);

  for (int i = 0; i < 40; ++i) {
    LaurentPoly x = random_truncated(rng), y = random_truncated(rng);
    CHECK((x * y).hi() == determined_up_to(x, y, rng));
  }
}

TEST_CASE("window reads") {
  LaurentPoly f = LaurentPoly::truncated({{1, 2}}, 1, 3);
  CHECK(f.coeff(-5) == 0);
  CHECK(f.coeff(3) == 0);
  CHECK_THROWS_AS(f.coeff(4), WindowUnderflow);
  LaurentPoly z = LaurentPoly::truncated({}, 0, 4);
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.valuation(), WindowUnderflow);
  CHECK_THROWS_AS(LaurentPoly::truncated({{5, 1}}, 0, 4), WindowUnderflow);
  CHECK_THROWS_AS(residue(LaurentPoly::truncated({{-2, 1}}, -2, -1)), WindowUnderflow);
}

TEST_CASE("residue") {
  CHECK(residue(LaurentPoly(1)) == 1);
  CHECK(residue(t(1)) == 0);
  CHECK(residue(t(-2, 3) + 5) == 5);
}

TEST_CASE("exact forms have zero residue") {
  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    LaurentPoly f = random_exact(rng);
    CHECK(residue(f.euler_derivative()) == 0);
    // d f = f'(t) dt = t f'(t) dt/t
    CHECK(residue(f.derivative().shift(1)) == 0);
    LaurentPoly g = random_truncated(rng);
    if (g.hi() >= 0) CHECK(residue(g.euler_derivative()) == 0);
  }
}

TEST_CASE("ring axioms") {
  SplitMix64 rng(17);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly f = i % 2 ? random_exact(rng) : random_truncated(rng);
    LaurentPoly g = random_truncated(rng);
    LaurentPoly h = i % 3 ? random_exact(rng) : random_truncated(rng);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f + g == g + f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * LaurentPoly(1) == f);
  }
}

TEST_CASE("ramified pullback") {
  CHECK(ramified_pullback(t(-1), 2) == t(-2));
  CHECK(ramified_pullback(1 + t(1), 3) == 1 + t(3));
  LaurentPoly g = 1 + t(1, 3);
  TwistedElement x{{g}, 1};
  TwistedElement y = ramified_pullback(x, 2);
  CHECK(y.form_degree == 1);
  CHECK(y.value[0] == ramified_pullback(g, 2) * Rational(2));
  TwistedElement sq = ramified_pullback(TwistedElement{{g}, 2}, 3);
  CHECK(sq.value[0] == ramified_pullback(g, 3) * Rational(9));

  LaurentPoly trunc = LaurentPoly::truncated({{0, 1}, {1, 2}}, 0, 1);
  LaurentPoly pulled = ramified_pullback(trunc, 3);
  CHECK(pulled.hi() == 5);
  CHECK(pulled.coeff(5) == 0);
  CHECK(pulled.coeff(3) == 2);

  SplitMix64 rng(23);
  for (int i = 0; i < 100; ++i) {
    LaurentPoly f = random_truncated(rng), h = random_exact(rng);
    int d = int(rng.uniform(1, 4));
    CHECK(ramified_pullback(f * h, d) == ramified_pullback(f, d) * ramified_pullback(h, d));
    CHECK(ramified_pullback(f + h, d) == ramified_pullback(f, d) + ramified_pullback(h, d));
  }
}

TEST_CASE("text form round trip") {
  SplitMix64 rng(29);
  for (int i = 0; i < 100; ++i) {
    LaurentPoly f = i % 2 ? random_exact(rng) : random_truncated(rng);
    CHECK(parse_laurent(f.str()) == f);
  }
  CHECK(parse_laurent("3*t^-2 + 5") == t(-2, 3) + 5);
  CHECK(parse_laurent("t - 1/2*t^3") == t(1) - t(3, Rational(1, 2)));
  CHECK((t(-2, 3) + 5).str() == "3*t^-2 + 5");
  CHECK(LaurentPoly::truncated({{1, -1}}, 1, 2).str() == "-1*t + O(t^3)");
  CHECK_THROWS(parse_laurent("3*x^2"));
}

TEST_CASE("twisted elements compare form degrees") {
  TwistedElement a{{LaurentPoly(1)}, 1}, b{{LaurentPoly(1)}, 2};
  CHECK_FALSE(a == b);
  b.form_degree = 1;
  CHECK(a == b);
}

TEST_CASE("order bounds") {
  OrderBound x{{1, 4}}, y{{2, 3}};
  CHECK(x.meet(y) == OrderBound{{1, 3}});
  CHECK(x.join(y) == OrderBound{{2, 4}});
  CHECK(x.meet(y) <= x);
  CHECK_FALSE(x <= y);
}
