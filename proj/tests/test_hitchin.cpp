#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "loopalg/errors.hpp"
#include "loopalg/hitchin.hpp"

using namespace loopalg;

namespace {

const char* kTypes[] = {"A1", "A2", "A3", "A4", "C2", "G2"};

std::shared_ptr<const RootDatum> datum(const char* name) {
  return build_root_datum(CartanType::parse(name));
}

Parahoric iwahori(std::shared_ptr<const RootDatum> rd) {
  return Parahoric(rd, std::vector<int>(rd->rank() + 1, 1));
}

Parahoric hyperspecial(std::shared_ptr<const RootDatum> rd) {
  std::vector<int> s(rd->rank() + 1, 0);
  s[0] = 1;
  return Parahoric(rd, s);
}

// Leibniz expansion of a determinant.
template <class R>
R leibniz(const Matrix<R>& m, const std::vector<int>& idx) {
  std::vector<int> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  R total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    R term(1);
    for (std::size_t i = 0; i < perm.size(); ++i) term = term * m(idx[i], idx[perm[i]]);
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Coefficient c_k of det(x - M) as (-1)^k times the sum of principal k-minors.
template <class R>
R charpoly_by_minors(const Matrix<R>& m, int k) {
  const int n = m.rows();
  R total(0);
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + k, true);
  do {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (choose[i]) idx.push_back(i);
    total = total + leibniz(m, idx);
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return k % 2 ? R(0) - total : total;
}

LaurentPoly random_poly(SplitMix64& rng, Exponent lo, int terms) {
  std::map<Exponent, Rational> c;
  for (int k = 0; k < terms; ++k) c[lo + k] = rng.rational();
  return LaurentPoly::exact(c);
}

TwistedElement random_form(const RootDatum& rd, SplitMix64& rng) {
  TwistedElement x{{}, 1};
  for (int b = 0; b < rd.dim(); ++b) x.value.push_back(random_poly(rng, -1, 3));
  return x;
}

// exp of a nilpotent matrix.
Matrix<LaurentPoly> exp_nilpotent(const Matrix<LaurentPoly>& n) {
  const int d = n.rows();
  Matrix<LaurentPoly> out = Matrix<LaurentPoly>::identity(d), power = out;
  for (int k = 1; k <= d; ++k) {
    power = (power * n).scaled(LaurentPoly(Rational(1, k)));
    out = out + power;
  }
  return out;
}

}  // namespace

TEST_CASE("generators match characteristic polynomial minors") {
  SplitMix64 rng(2);
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    CHECK(inv.rank() == rd->rank());
    for (int trial = 0; trial < 3; ++trial) {
      TwistedElement x = random_form(*rd, rng);
      std::vector<LaurentPoly> value = chevalley_map(inv, x).components;
      Matrix<LaurentPoly> m = rd->to_matrix(x.value);
      for (int i = 0; i < inv.rank(); ++i) {
        REQUIRE(inv.generators()[i].kind == GeneratorKind::CharPolyCoefficient);
        CHECK(value[i] == charpoly_by_minors(m, inv.degrees()[i]));
      }
    }
  }
}

TEST_CASE("chevalley map examples") {
  auto a1 = datum("A1");
  InvariantSystem inv(a1);
  TwistedElement h{std::vector<LaurentPoly>(3), 1};
  h.value[0] = 1;
  // diag(1, -1): det(x - h) = x^2 - 1.
  CHECK(chevalley_map(inv, h).components[0] == LaurentPoly(-1));
  TwistedElement e{std::vector<LaurentPoly>(3), 1};
  e.value[a1->simple_line(0)] = 1;
  CHECK(chevalley_map(inv, e).components[0] == LaurentPoly());
  CHECK(chevalley_map(inv, e).pole_orders()[0] == std::nullopt);
  e.form_degree = 2;
  CHECK_THROWS_AS(chevalley_map(inv, e), PreconditionError);

  // t^-1 f + e_theta in A2: the cyclic matrix has det(x - X) = x^3 - t^-1.
  auto a2 = datum("A2");
  InvariantSystem inv2(a2);
  TwistedElement c{std::vector<LaurentPoly>(a2->dim()), 1};
  for (int i = 0; i < 2; ++i) c.value[a2->negative_simple_line(i)] = LaurentPoly::monomial(-1);
  c.value[a2->theta_line()] = 1;
  HitchinValue v = chevalley_map(inv2, c);
  CHECK(v.components[0] == LaurentPoly());
  CHECK(v.components[1] == LaurentPoly::monomial(-2, -1));
  CHECK(v.pole_orders()[1] == 5);
}

TEST_CASE("generators are invariant and independent") {
  SplitMix64 rng(4);
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    CHECK(inv.check_ad_invariance(rng, 20));
    Element x(rd->dim());
    for (auto& c : x) c = rng.rational();
    CHECK(inv.jacobian_rank(x) == rd->rank());
  }
  CHECK_THROWS_AS(InvariantSystem(datum("B3")), UnsupportedType);
  CHECK_THROWS_AS(InvariantSystem(datum("A5")), UnsupportedType);
}

TEST_CASE("conjugation by exp of an integral nilpotent") {
  SplitMix64 rng(6);
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    std::vector<LaurentPoly> n(rd->dim());
    for (int b = rd->rank(); b < rd->rank() + int(rd->positive_roots().size()); ++b)
      n[b] = random_poly(rng, 0, 2);
    Matrix<LaurentPoly> nm = rd->to_matrix(n);
    Matrix<LaurentPoly> g = exp_nilpotent(nm), g_inv = exp_nilpotent(nm.scaled(LaurentPoly(-1)));
    CHECK(g * g_inv == Matrix<LaurentPoly>::identity(rd->rep_dim()));
    Matrix<LaurentPoly> x = rd->to_matrix(random_form(*rd, rng).value);
    CHECK(inv.evaluate_matrix(g * x * g_inv) == inv.evaluate_matrix(x));
  }
}

TEST_CASE("image bounds") {
  for (const char* name : kTypes) {
    auto rd = datum(name);
    auto degrees = fundamental_degrees(*rd);
    for (const auto& s : all_standard_kac_coords(*rd)) {
      Parahoric p(rd, s);
      CHECK(hitchin_bounds(p, 1).b == std::vector<Exponent>(degrees.begin(), degrees.end()));
      for (int n = -2; n <= 4; ++n) CHECK(hitchin_bounds(p, n) <= hitchin_bounds(p, n + 1));
    }
    OrderBound hs = hitchin_bounds(hyperspecial(rd), 0);
    for (Exponent b : hs.b) CHECK(b == 0);
    OrderBound iw = hitchin_bounds(iwahori(rd), 0);
    for (std::size_t i = 0; i < degrees.size(); ++i) CHECK(iw.b[i] == degrees[i] - 1);
  }
}

TEST_CASE("containment") {
  auto a1 = datum("A1");
  InvariantSystem inv(a1);
  ContainmentReport r = verify_containment(inv, iwahori(a1), 2, 100, 7);
  CHECK(r.pass);
  CHECK(r.bounds.b[0] == 3);
  CHECK(r.max_orders[0] == 3);
  CHECK(verify_containment(inv, iwahori(a1), 0, 100, 7).bounds.b[0] == 1);
  CHECK(verify_containment(inv, iwahori(a1), 0, 100, 7).pass);

  auto a2 = datum("A2");
  InvariantSystem inv2(a2);
  ContainmentReport hs = verify_containment(inv2, hyperspecial(a2), 0, 100, 7);
  CHECK(hs.pass);
  CHECK(hs.bounds.b == std::vector<Exponent>{0, 0});

  ContainmentReport serial = verify_containment(inv2, iwahori(a2), 2, 40, 11, 1);
  ContainmentReport threaded = verify_containment(inv2, iwahori(a2), 2, 40, 11, 4);
  CHECK(serial.max_orders == threaded.max_orders);
  CHECK(serial.pass == threaded.pass);

  // A forged report surfaces as the library error.
  ContainmentReport bad = serial;
  bad.pass = false;
  bad.violation_index = 3;
  CHECK_THROWS_AS(require_containment(bad), ContainmentViolation);
}

TEST_CASE("kostant section") {
  SplitMix64 rng(9);
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    KostantSection ks(inv, principal_triple(*rd));
    std::vector<Rational> zero(inv.rank(), 0);
    CHECK(ks.section(zero) == ks.triple().f);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> c;
      for (int i = 0; i < inv.rank(); ++i) c.push_back(rng.rational());
      CHECK(inv.evaluate(ks.section(c)) == c);
      std::vector<LaurentPoly> cl;
      for (int i = 0; i < inv.rank(); ++i) cl.push_back(random_poly(rng, -2, 3));
      CHECK(inv.evaluate(ks.section(cl)) == cl);
    }
    for (std::size_t i = 0; i < ks.slice_basis().size(); ++i)
      CHECK(rd->bracket(ks.triple().e, ks.slice_basis()[i]) == Element(rd->dim(), 0));
  }
  // A1: det(x - (f + y e)) = x^2 - y, so y = -gamma.
  auto a1 = datum("A1");
  InvariantSystem inv(a1);
  KostantSection ks(inv, principal_triple(*a1));
  CHECK(ks.leading()[0] == -1);
  Element s = ks.section(std::vector<Rational>{Rational(5, 2)});
  CHECK(s[a1->simple_line(0)] == Rational(-5, 2));
  CHECK(s[a1->negative_simple_line(0)] == 1);
}

TEST_CASE("surjectivity at n = 2") {
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    SurjectivityReport r = verify_surjectivity(inv, iwahori(rd), 25, 1);
    CHECK_MESSAGE(r.pass, name << ": " << r.failure);
    for (std::size_t i = 0; i < r.attained.size(); ++i) {
      CHECK(r.attained[i]);
      int d = inv.degrees()[i];
      CHECK(r.bounds.b[i] == d + d / rd->coxeter_number());
    }
  }
  auto c2 = datum("C2");
  InvariantSystem inv(c2);
  CHECK(verify_surjectivity(inv, Parahoric(c2, {1, 0, 0}), 10, 3).pass);
  CHECK(verify_surjectivity(inv, Parahoric(c2, {1, 0, 1}), 10, 3).pass);
  CHECK_THROWS_AS(verify_surjectivity(inv, iwahori(c2), 1, 3, 1), PreconditionError);

  // Every principal parahoric of the supported types.
  int nonprincipal = 0;
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem sys(rd);
    for (const auto& s : all_standard_kac_coords(*rd)) {
      Parahoric p(rd, s);
      if (!is_principal(p)) {
        ++nonprincipal;
        CHECK_THROWS_AS(verify_surjectivity(sys, p, 1, 1), PreconditionError);
        continue;
      }
      CHECK(verify_surjectivity(sys, p, 4, 5).pass);
    }
  }
  CHECK(nonprincipal > 0);
}

TEST_CASE("surjectivity preimage of a fixed target") {
  auto a1 = datum("A1");
  InvariantSystem inv(a1);
  Parahoric iw = iwahori(a1);
  std::vector<LaurentPoly> target{LaurentPoly::monomial(-1, 3) + 2};
  TwistedElement xi = surjectivity_preimage(inv, iw, target);
  CHECK(orthogonal_lattice(iw, 2).contains(xi));
  CHECK(chevalley_map(inv, xi).components == target);
  CHECK(chevalley_map(inv, xi).pole_orders()[0] == 3);
}

TEST_CASE("n = 1 corollary") {
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    for (const auto& s : all_standard_kac_coords(*rd)) {
      CorollaryReport r = verify_n1_corollary(inv, Parahoric(rd, s), 5, 13);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("residue diagram") {
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    ResidueReport r = residue_diagram(inv, iwahori(rd), 50, 21);
    CHECK_MESSAGE(r.pass, name << ": " << r.failure);
    CHECK(r.scalar != 0);
  }
  // Type A: the cyclic element has det(x - X) = x^{l+1} - t^-1 and all z_i = 1.
  for (const char* name : {"A1", "A2", "A3", "A4"})
    CHECK(recorded_residue_scalar(CartanType::parse(name)) == -1);
  CHECK_THROWS_AS(recorded_residue_scalar(CartanType::parse("B3")), UnsupportedType);

  // Elements of p(1)^perp have zero image on both paths.
  SplitMix64 rng(30);
  for (const char* name : kTypes) {
    auto rd = datum(name);
    InvariantSystem inv(rd);
    Parahoric iw = iwahori(rd);
    for (int k = 0; k < 5; ++k) {
      TwistedElement xi = sample_orthogonal(iw, 1, rng);
      for (const auto& z : residue_coordinates(iw, xi)) CHECK(z == 0);
      HitchinValue v = chevalley_map(inv, xi);
      CHECK(v.components.back().coeff(-1) == 0);
    }
  }
}

TEST_CASE("torus invariant generator") {
  CHECK(torus_invariant_generator(iwahori(datum("A1"))).exponents == std::vector<int>{1, 1});
  CHECK(torus_invariant_generator(iwahori(datum("A2"))).exponents == std::vector<int>{1, 1, 1});
  CHECK(torus_invariant_generator(iwahori(datum("G2"))).exponents == std::vector<int>{1, 2, 3});
  for (const char* name : {"A1", "A2", "A3", "A4", "C2", "G2", "B3", "D4"}) {
    auto rd = datum(name);
    TorusInvariant g = torus_invariant_generator(iwahori(rd));
    CHECK(g.lattice_check);
    CHECK(g.degree == rd->coxeter_number());
  }
  CHECK_THROWS_AS(torus_invariant_generator(hyperspecial(datum("A2"))), PreconditionError);
}
