#pragma once

// Opers d/dz + A(z) on G_m, built for the Langlands dual of the input type.
//
// A(z) is stored as Laurent coefficients on the Chevalley basis of the dual
// algebra. Gauge transformations act by
//   A -> exp(ad x) A - sum_k ad_x^k(x') / (k+1)!,
// and the point at infinity is reached through t = 1/z, dz = -t^-2 dt.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/laurent.hpp"
#include "loopalg/polynomial.hpp"
#include "loopalg/rootdata.hpp"

namespace loopalg {

struct Oper {
  /// Root datum of the dual group.
  std::shared_ptr<const RootDatum> rd;
  /// The type whose dual this oper lives on.
  CartanType source_type;
  /// Coefficient of each basis line, a Laurent polynomial in z.
  std::vector<LaurentPoly> a;
  /// A = phi f + v with v in ker ad e.
  bool canonical = false;
};

/// Graded basis p_i of ker ad e for the standard principal triple, one vector
/// per degree (RREF within each degree).
struct SliceBasis {
  PrincipalTriple triple;
  std::vector<int> degrees;
  std::vector<Element> p;
};

SliceBasis slice_basis(const RootDatum& rd);

/// A in the defining representation of the dual group.
Matrix<LaurentPoly> connection_matrix(const Oper& op);

/// d/dz + f/z + a e_theta on the dual of `type`.
Oper fg_connection(const CartanType& type, const Rational& a);

/// Gauge transformation by exp(x), x in the positive nilpotent part.
Oper gauge(const Oper& op, const std::vector<LaurentPoly>& x);

/// Canonical form phi f + v, v in ker ad e. The f-part must be z^k f with
/// coefficient exactly 1 on every negative simple line and the rest of A must
/// lie in the Borel; otherwise NotOperShape.
Oper gauge_reduce(const Oper& op);

/// Components v_i of a canonical oper along the slice basis.
std::vector<LaurentPoly> slice_components(const Oper& op);

/// Simple pole at 0 with polar part exactly f/z and regular slice components.
bool check_residue_rs(const Oper& op);

/// Canonical form at infinity, in the coordinate t = 1/z with f-part f.
Oper at_infinity(const Oper& op);

/// Slice components at infinity satisfy ord_t v_i >= -d_i - floor(d_i / h).
bool check_irregular_type(const Oper& op);

struct OperSpace {
  int dimension = 0;
  /// Polynomial degree allowed for each slice component in the ansatz.
  int degree_bound = 0;
  /// Basis of solutions, as slice components v_i(z).
  std::vector<std::vector<LaurentPoly>> basis;
  /// The single basis vector is a constant multiple of e_theta.
  bool spanned_by_theta = false;
};

/// Opers d/dz + f/z + v(z) with v a polynomial in z valued in ker ad e of
/// degree <= degree_bound, subject to the conditions at 0 and infinity.
OperSpace global_oper_space(const CartanType& type, int degree_bound = 3);

struct SlopeCertificate {
  int pullback_degree = 0;
  int gauge_exponent = 0;
  /// Pole order in u against du/u after gauging.
  int pole_order = 0;
  Element leading;
  Matrix<Rational> leading_matrix;
  bool regular_semisimple = false;
  std::string claim;
};

/// Pulls back the oper at infinity along t = u^h and gauges by rho^vee(u^c)
/// for c = 0, 1, -1, 2, -2, ... up to |c| <= h, accepting the first c with
/// pole order 1 and regular semisimple leading term. Throws PreconditionError
/// for a = 0 and NoCertificate when no exponent works.
SlopeCertificate slope_certificate(const Oper& op);

struct ScalarODE {
  /// Monic: y^(N) + q_{N-1} y^(N-1) + ... + q_0 y = 0.
  std::vector<RatFunc> q;
  int order = 0;
  /// Index of the basis covector used as cyclic vector.
  int cyclic_vector = 0;
};

/// Cyclic-vector elimination for horizontal sections Y' = -A Y, starting from
/// the last basis covector (lowest weight) and falling back to the others in
/// decreasing order. Throws CyclicFailure if none is cyclic.
ScalarODE cyclic_ode(const Oper& op);

struct NewtonPolygon {
  /// (k, v_inf(a_k)) for the nonzero coefficients of the operator in
  /// theta = z d/dz, with v_inf = -degree.
  std::vector<std::pair<int, Exponent>> points;
  Rational max_slope;
  Exponent irregularity = 0;
};

NewtonPolygon newton_polygon_at_infinity(const ScalarODE& ode);

struct HitchinBase {
  /// Line-bundle degree and dimension of global sections per fundamental degree.
  std::vector<int> bundle_degrees;
  std::vector<int> dims;
  int total = 0;
};

/// Sections of omega^{d_i}((d_i - 1) 0 + d_i inf) for i < l and of
/// omega^{d_l}((d_l - 1) 0 + (d_l + 1) inf) on P^1.
HitchinBase global_hitchin_base(const RootDatum& rd);

}  // namespace loopalg
