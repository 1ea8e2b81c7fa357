#include <doctest.h>

#include "loopalg/errors.hpp"
#include "loopalg/opers.hpp"
#include "loopalg/random.hpp"

using namespace loopalg;

namespace {

const char* kTypes[] = {"A1", "A2", "A3", "A4", "C2", "G2"};

using Vec = std::vector<LaurentPoly>;
using LMatrix = Matrix<LaurentPoly>;

LMatrix derivative(const LMatrix& m) {
  LMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative();
  return out;
}

// exp of a nilpotent matrix as a finite series.
LMatrix exp_nilpotent(const LMatrix& x) {
  const int n = x.rows();
  LMatrix out = LMatrix::identity(n), term = LMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    term = (term * x).scaled(LaurentPoly(Rational(1, k)));
    out = out + term;
  }
  return out;
}

// g A g^-1 - g' g^-1 in the defining representation.
LMatrix matrix_gauge(const LMatrix& a, const LMatrix& x) {
  LMatrix minus_x = x.scaled(LaurentPoly(-1));
  LMatrix g = exp_nilpotent(x), ginv = exp_nilpotent(minus_x);
  return g * a * ginv - derivative(g) * ginv;
}

LaurentPoly random_poly(SplitMix64& rng, int max_degree) {
  std::map<Exponent, Rational> terms;
  for (int k = 0; k <= max_degree; ++k) {
    Rational c = rng.rational();
    if (c != 0) terms[k] = c;
  }
  return LaurentPoly::exact(terms);
}

// f + random Borel-valued polynomial on the dual of `name`.
Oper random_borel_oper(const char* name, SplitMix64& rng, int max_degree) {
  Oper op = fg_connection(CartanType::parse(name), 0);
  const RootDatum& rd = *op.rd;
  for (int line = 0; line < rd.dim(); ++line) {
    if (rd.height(line) >= 0) op.a[line] = random_poly(rng, max_degree);
    if (rd.height(line) == -1) op.a[line] = LaurentPoly(1);
  }
  op.canonical = false;
  return op;
}

Vec random_nilpotent(const RootDatum& rd, SplitMix64& rng) {
  Vec x(rd.dim());
  for (int line = 0; line < rd.dim(); ++line)
    if (rd.height(line) > 0) x[line] = random_poly(rng, 2);
  return x;
}

// v = A - f for an oper with f-part f.
Vec strip_f(const Oper& op, Exponent k) {
  Vec v = op.a;
  for (int i = 0; i < op.rd->rank(); ++i)
    v[op.rd->negative_simple_line(i)] -= LaurentPoly::monomial(k);
  return v;
}

}  // namespace

TEST_CASE("gauge action agrees with matrix conjugation") {
  SplitMix64 rng(11);
  for (const char* name : {"A1", "A2", "C2", "G2"}) {
    CAPTURE(name);
    Oper op = random_borel_oper(name, rng, 2);
    Vec x = random_nilpotent(*op.rd, rng);
    Oper g = gauge(op, x);
    CHECK(connection_matrix(g) ==
          matrix_gauge(connection_matrix(op), op.rd->to_matrix(x)));
  }
  Oper op = fg_connection(CartanType::parse("A2"), 1);
  Vec bad(op.rd->dim());
  bad[0] = LaurentPoly(1);
  CHECK_THROWS_AS(gauge(op, bad), PreconditionError);
}

TEST_CASE("A1 reduction matches the rank-one gauge formula") {
  Oper op = fg_connection(CartanType::parse("A1"), 0);
  const RootDatum& rd = *op.rd;
  // Basis: h = diag(1,-1), e = E12, f = E21 in the defining representation.
  REQUIRE(rd.rep(0)(0, 0) == 1);
  REQUIRE(rd.rep(0)(1, 1) == -1);
  REQUIRE(rd.rep(rd.simple_line(0))(0, 1) == 1);
  REQUIRE(rd.rep(rd.negative_simple_line(0))(1, 0) == 1);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    LaurentPoly beta = random_poly(rng, 2), gamma = random_poly(rng, 3);
    op.a[0] = beta;
    op.a[rd.simple_line(0)] = gamma;
    op.a[rd.negative_simple_line(0)] = LaurentPoly(1);
    op.canonical = false;
    Oper red = gauge_reduce(op);
    // exp(-beta e) gives v = gamma + beta^2 + beta'.
    CHECK(red.a[0].is_zero());
    CHECK(red.a[rd.simple_line(0)] == gamma + beta * beta + beta.derivative());
    CHECK(gauge_reduce(red).a == red.a);
    REQUIRE(slice_components(red).size() == 1);
  }
}

TEST_CASE("canonical form lies in ker ad e and is gauge invariant") {
  SplitMix64 rng(21);
  for (const char* name : kTypes) {
    CAPTURE(name);
    const int trials = std::string(name) == "G2" ? 2 : 4;
    for (int trial = 0; trial < trials; ++trial) {
      Oper op = random_borel_oper(name, rng, 2);
      const RootDatum& rd = *op.rd;
      Oper red = gauge_reduce(op);
      CHECK(red.canonical);
      Vec v = strip_f(red, 0);
      const Element& e = principal_triple(rd).e;
      Vec e_lift(e.begin(), e.end());
      for (const auto& c : rd.bracket(e_lift, v)) CHECK(c.is_zero());
      // Idempotent.
      CHECK(gauge_reduce(red).a == red.a);
      // Gauge-equivalent inputs reduce to the same canonical form.
      Oper moved = gauge(op, random_nilpotent(rd, rng));
      CHECK(gauge_reduce(moved).a == red.a);
      CHECK(slice_components(red).size() == std::size_t(rd.rank()));
    }
  }
}

TEST_CASE("gauge_reduce rejects non-oper shapes") {
  Oper op = fg_connection(CartanType::parse("A2"), 1);
  const RootDatum& rd = *op.rd;
  Oper scaled = op;
  scaled.a[rd.negative_simple_line(0)] = LaurentPoly::monomial(-1, 2);
  CHECK_THROWS_AS(gauge_reduce(scaled), NotOperShape);
  Oper uneven = op;
  uneven.a[rd.negative_simple_line(1)] = LaurentPoly(1);
  CHECK_THROWS_AS(gauge_reduce(uneven), NotOperShape);
  Oper low = op;
  low.a[rd.negative_theta_line()] = LaurentPoly(1);
  CHECK_THROWS_AS(gauge_reduce(low), NotOperShape);
  // Already canonical with f/z: unchanged.
  CHECK(gauge_reduce(op).a == op.a);
}

TEST_CASE("fg connection in the defining representation") {
  Oper a1 = fg_connection(CartanType::parse("A1"), 1);
  LMatrix m = connection_matrix(a1);
  CHECK(m(0, 0).is_zero());
  CHECK(m(1, 1).is_zero());
  CHECK(m(0, 1) == LaurentPoly(1));
  CHECK(m(1, 0) == LaurentPoly::monomial(-1));

  Oper a2 = fg_connection(CartanType::parse("A2"), 1);
  LMatrix m2 = connection_matrix(a2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      if (i == j + 1)
        CHECK(m2(i, j) == LaurentPoly::monomial(-1));
      else if (i == 0 && j == 2)
        CHECK(!m2(i, j).is_zero());
      else
        CHECK(m2(i, j).is_zero());
    }
  // Opers live on the dual group.
  CHECK(fg_connection(CartanType::parse("C2"), 1).rd->type().name() == "B2");
  CHECK(fg_connection(CartanType::parse("G2"), 1).rd->type().name() == "G2t");
}

TEST_CASE("regular singular condition at 0") {
  for (const char* name : kTypes) {
    CAPTURE(name);
    for (int a : {-2, 0, 1, 3}) CHECK(check_residue_rs(fg_connection(CartanType::parse(name), a)));
    Oper op = fg_connection(CartanType::parse(name), 1);
    const RootDatum& rd = *op.rd;
    Oper double_pole = op;
    for (int i = 0; i < rd.rank(); ++i)
      double_pole.a[rd.negative_simple_line(i)] = LaurentPoly::monomial(-2);
    CHECK_FALSE(check_residue_rs(double_pole));
    Oper singular = op;
    const Element p1 = slice_basis(rd).p[0];
    for (int b = 0; b < rd.dim(); ++b)
      if (p1[b] != 0) singular.a[b] += LaurentPoly::monomial(-1, p1[b]);
    CHECK_FALSE(check_residue_rs(singular));
  }
}

TEST_CASE("irregular type at infinity") {
  for (const char* name : kTypes) {
    CAPTURE(name);
    for (int a : {-1, 0, 2}) CHECK(check_irregular_type(fg_connection(CartanType::parse(name), a)));
    Oper op = fg_connection(CartanType::parse(name), 1);
    Oper steep = op;
    steep.a[op.rd->theta_line()] = LaurentPoly::monomial(1);
    CHECK_FALSE(check_irregular_type(steep));
    CHECK(check_residue_rs(steep));
  }
}

TEST_CASE("infinity transform for A1 by hand") {
  // At t = 1/z: B = -t^-1 f - a t^-2 e; Ad(rho^vee(-1)) flips both signs and
  // Ad(rho^vee(1/t)) gives f + (1/2t) h + a t^-3 e. The rank-one formula
  // v = gamma + beta^2 + beta' then applies with beta = 1/(2t), gamma = a t^-3.
  Oper op = fg_connection(CartanType::parse("A1"), 3);
  Oper inf = at_infinity(op);
  auto comps = slice_components(inf);
  REQUIRE(comps.size() == 1);
  LaurentPoly beta = LaurentPoly::monomial(-1, Rational(1, 2));
  LaurentPoly gamma = LaurentPoly::monomial(-3, Rational(3));
  CHECK(comps[0] == gamma + beta * beta + beta.derivative());
}

TEST_CASE("global oper space is the line spanned by e_theta") {
  for (const char* name : kTypes) {
    CAPTURE(name);
    for (int bound : {1, 3}) {
      OperSpace space = global_oper_space(CartanType::parse(name), bound);
      CHECK(space.dimension == 1);
      CHECK(space.spanned_by_theta);
      REQUIRE(space.basis.size() == 1);
      const auto& comps = space.basis[0];
      for (std::size_t i = 0; i + 1 < comps.size(); ++i) CHECK(comps[i].is_zero());
      CHECK(comps.back().terms().size() == 1);
      CHECK(comps.back().terms().begin()->first == 0);
    }
  }
}

TEST_CASE("slope certificate") {
  for (const char* name : kTypes) {
    CAPTURE(name);
    for (int a : {1, -2}) {
      Oper op = fg_connection(CartanType::parse(name), a);
      const RootDatum& rd = *op.rd;
      SlopeCertificate cert = slope_certificate(op);
      const int h = rd.coxeter_number();
      CHECK(cert.pullback_degree == h);
      CHECK(cert.gauge_exponent == 1);
      CHECK(cert.pole_order == 1);
      CHECK(cert.regular_semisimple);
      // Leading term -h (f + a e_theta).
      PrincipalTriple tr = principal_triple(rd);
      for (int b = 0; b < rd.dim(); ++b) {
        Rational expect = tr.f[b];
        if (b == rd.theta_line()) expect += a;
        CHECK(cert.leading[b] == expect * Rational(-h));
      }
      // Independent regularity check: distinct eigenvalues in the defining
      // representation for type A.
      if (name[0] == 'A') {
        UPoly chi(characteristic_polynomial(cert.leading_matrix));
        CHECK(squarefree_part(chi) == chi.monic());
      }
    }
  }
  // A1: leading matrix -2 [[0, a], [1, 0]] has characteristic polynomial x^2 - 4a.
  SlopeCertificate c1 = slope_certificate(fg_connection(CartanType::parse("A1"), 1));
  CHECK(characteristic_polynomial(c1.leading_matrix) == std::vector<Rational>{-4, 0, 1});
  CHECK_THROWS_AS(slope_certificate(fg_connection(CartanType::parse("A2"), 0)), PreconditionError);
}

TEST_CASE("cyclic vector elimination") {
  // A1 by hand: y = (y1, y2), y' = -A y with A = [[0, a], [1/z, 0]], phi = y2:
  // z phi'' + phi' - a phi = 0.
  for (int a : {1, 5, -3}) {
    ScalarODE ode = cyclic_ode(fg_connection(CartanType::parse("A1"), a));
    REQUIRE(ode.order == 2);
    CHECK(ode.cyclic_vector == 1);
    UPoly z = UPoly::monomial(1);
    CHECK(ode.q[1] == RatFunc(UPoly(1), z));
    CHECK(ode.q[0] == RatFunc(UPoly(Rational(-a)), z));
    NewtonPolygon np = newton_polygon_at_infinity(ode);
    CHECK(np.irregularity == 1);
    CHECK(np.max_slope == Rational(1, 2));
  }
  for (const char* name : kTypes) {
    CAPTURE(name);
    Oper op = fg_connection(CartanType::parse(name), 1);
    ScalarODE ode = cyclic_ode(op);
    CHECK(ode.order == op.rd->rep_dim());
    NewtonPolygon np = newton_polygon_at_infinity(ode);
    CHECK(np.irregularity == 1);
    // Tame: Euler type, regular singular at 0 and infinity.
    ScalarODE tame = cyclic_ode(fg_connection(CartanType::parse(name), 0));
    for (int k = 0; k < tame.order; ++k) {
      const RatFunc& q = tame.q[k];
      if (q.is_zero()) continue;
      CHECK(q.num().degree() == 0);
      CHECK(q.den() == UPoly::monomial(tame.order - k));
    }
    CHECK(newton_polygon_at_infinity(tame).irregularity == 0);
  }
  ScalarODE a2 = cyclic_ode(fg_connection(CartanType::parse("A2"), 1));
  CHECK(a2.order == 3);
  CHECK(newton_polygon_at_infinity(a2).max_slope == Rational(1, 3));
}

TEST_CASE("global Hitchin base") {
  for (const char* name : kTypes) {
    CAPTURE(name);
    auto rd = build_root_datum(CartanType::parse(name));
    HitchinBase base = global_hitchin_base(*rd);
    CHECK(base.total == 1);
    const int l = rd->rank();
    for (int i = 0; i < l; ++i) CHECK(base.bundle_degrees[i] == (i + 1 < l ? -1 : 0));
    CHECK(base.dims.back() == 1);
  }
}
