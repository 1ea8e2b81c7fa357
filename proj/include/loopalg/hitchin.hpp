#pragma once

// Invariant polynomials, the local Hitchin map and its image bounds.
//
// Generators are coefficients of the characteristic polynomial det(x - X) of
// the defining representation, c_d for each fundamental degree d, falling back
// to tr X^d when c_d is not independent of the lower ones. g* is identified
// with g through the trace form of the defining representation.
//
// A Hitchin value stores component i as g_i with the form g_i (dt/t)^{d_i}.
// Its pole order, measured against (dt)^{d_i}, is d_i - val(g_i).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/affine.hpp"
#include "loopalg/charpoly.hpp"
#include "loopalg/laurent.hpp"
#include "loopalg/polynomial.hpp"
#include "loopalg/random.hpp"
#include "loopalg/rootdata.hpp"

namespace loopalg {

enum class GeneratorKind { CharPolyCoefficient, TracePower };

struct Generator {
  GeneratorKind kind = GeneratorKind::CharPolyCoefficient;
  int degree = 0;
  std::string str() const;
};

class InvariantSystem {
 public:
  /// Throws UnsupportedType for types without invariant support.
  explicit InvariantSystem(std::shared_ptr<const RootDatum> rd);

  const RootDatum& root_datum() const { return *rd_; }
  std::shared_ptr<const RootDatum> root_datum_ptr() const { return rd_; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<Generator>& generators() const { return gens_; }
  int rank() const { return int(gens_.size()); }

  /// Generators evaluated on a defining-representation matrix over R.
  template <class R>
  std::vector<R> evaluate_matrix(const Matrix<R>& m) const {
    std::vector<R> c = charpoly_coeffs(m, degrees_.back());
    std::vector<R> out;
    for (const auto& g : gens_)
      out.push_back(g.kind == GeneratorKind::CharPolyCoefficient ? c[g.degree]
                                                                 : trace_power(m, g.degree));
    return out;
  }

  /// Generators evaluated on a coefficient vector over R.
  template <class R>
  std::vector<R> evaluate(const std::vector<R>& x) const {
    return evaluate_matrix(rd_->to_matrix(x));
  }

  /// d/de P_i(x + e [y, x]) at e = 0 vanishes for random rational x, y.
  bool check_ad_invariance(SplitMix64& rng, int points) const;

  /// Rank of the Jacobian (dP_i / dx_b) at x.
  int jacobian_rank(const Element& x) const;

 private:
  std::shared_ptr<const RootDatum> rd_;
  std::vector<int> degrees_;
  std::vector<Generator> gens_;
};

struct HitchinValue {
  std::vector<LaurentPoly> components;
  std::vector<int> degrees;

  /// d_i - val(g_i); nullopt for an exactly vanishing component.
  std::vector<std::optional<Exponent>> pole_orders() const;
  friend bool operator==(const HitchinValue&, const HitchinValue&) = default;
};

/// Generators applied to xi in (dt/t)-normalization. xi must have form degree 1.
HitchinValue chevalley_map(const InvariantSystem& inv, const TwistedElement& xi);

/// b_i = d_i - ceil(d_i (1 - n) / m).
OrderBound hitchin_bounds(const Parahoric& p, int n);

/// Random element of p(n)^perp with rational coefficients on the three lowest
/// admissible t-orders of every line.
TwistedElement sample_orthogonal(const Parahoric& p, int n, SplitMix64& rng);

/// Depth cutoff used by sample_orthogonal.
inline constexpr int kSampleDepth = 3;

struct ContainmentReport {
  OrderBound bounds;
  /// Largest pole order seen per component (nullopt if always zero).
  std::vector<std::optional<Exponent>> max_orders;
  int samples = 0;
  bool pass = true;
  /// First violating sample, if any.
  std::optional<std::uint64_t> violation_index;
  std::string violation_element;
};

/// Samples p(n)^perp and checks each pole order against hitchin_bounds.
/// Sample k draws from SplitMix64::stream(seed, k); `jobs` threads share the
/// indices and results are merged in index order.
ContainmentReport verify_containment(const InvariantSystem& inv, const Parahoric& p, int n,
                                     int samples, std::uint64_t seed, int jobs = 1);

/// Throws ContainmentViolation when the report fails.
void require_containment(const ContainmentReport& report);

/// The slice f' + sum y_i p_i for a principal triple (e', h', f'), with p_i the
/// RREF basis of ker ad e' in h'-eigenvalue 2(d_i - 1).
class KostantSection {
 public:
  KostantSection(const InvariantSystem& inv, PrincipalTriple triple);

  const PrincipalTriple& triple() const { return triple_; }
  /// p_i, ordered as the generators.
  const std::vector<Element>& slice_basis() const { return basis_; }
  /// P_i(f' + sum y_j p_j) as polynomials in y.
  const std::vector<MPoly>& slice_invariants() const { return invariants_; }
  /// Coefficient of y_i in P_i(f' + sum y_j p_j).
  const std::vector<Rational>& leading() const { return leading_; }

  /// y with P(f' + sum y_i p_i) = c, solved triangularly.
  template <class R>
  std::vector<R> coordinates(const std::vector<R>& c) const {
    const int l = int(c.size());
    std::vector<R> y(l, R(0));
    for (int i = 0; i < l; ++i) {
      // invariants_[i] - leading_[i] y_i involves only y_j with d_j < d_i.
      R rest = lower_[i].eval(y);
      y[i] = (c[i] - rest) * (Rational(1) / leading_[i]);
    }
    return y;
  }

  /// f' + sum y_i p_i as a coefficient vector.
  template <class R>
  std::vector<R> section(const std::vector<R>& c) const {
    std::vector<R> y = coordinates(c);
    std::vector<R> x(triple_.f.size(), R(0));
    for (std::size_t b = 0; b < x.size(); ++b) x[b] = R(triple_.f[b]);
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t b = 0; b < x.size(); ++b)
        if (basis_[i][b] != 0) x[b] = x[b] + y[i] * basis_[i][b];
    return x;
  }

 private:
  PrincipalTriple triple_;
  std::vector<Element> basis_;
  std::vector<MPoly> invariants_, lower_;
  std::vector<Rational> leading_;
};

struct SurjectivityReport {
  OrderBound bounds;
  int trials = 0;
  /// Per component: the boundary order was attained by some witness.
  std::vector<bool> attained;
  bool pass = true;
  std::string failure;
};

/// Preimage in p(2)^perp of a target g with val(g_i) >= -floor(d_i / m):
/// Kostant section for the principal witness applied to g(u^m), twisted by
/// the witness cocharacter, then read back on the t-line. Throws
/// PreconditionError unless p is principal.
TwistedElement surjectivity_preimage(const InvariantSystem& inv, const Parahoric& p,
                                     const std::vector<LaurentPoly>& target);

/// `trials` random targets with exact boundary valuations; each preimage must
/// lie in p(2)^perp and map back to its target. Only n = 2 is meaningful.
SurjectivityReport verify_surjectivity(const InvariantSystem& inv, const Parahoric& p, int trials,
                                       std::uint64_t seed, int n = 2);

struct CorollaryReport {
  OrderBound bounds;
  int samples = 0;
  std::vector<bool> attained;
  bool pass = true;
};

/// n = 1: samples of the Iwahori lattice i(1)^perp, which lies in p(1)^perp,
/// attain every bound b_i = d_i.
CorollaryReport verify_n1_corollary(const InvariantSystem& inv, const Parahoric& p, int samples,
                                    std::uint64_t seed);

struct ResidueReport {
  /// bottom = scalar * top on every sample.
  Rational scalar;
  int samples = 0;
  bool pass = true;
  std::string failure;
};

/// z_i = Res tr(xi X_i) for the lines of V_P = g_0(1) of the Iwahori:
/// e_{alpha_i} t^0 and e_{-theta} t^1, with z_0 for -theta.
std::vector<Rational> residue_coordinates(const Parahoric& p, const TwistedElement& xi);

/// Top path: prod z_i^{a_i}. Bottom path: coefficient of t^{-1} in the
/// degree-h component. The scalar is fixed per type and recorded.
ResidueReport residue_diagram(const InvariantSystem& inv, const Parahoric& p, int samples,
                              std::uint64_t seed);

/// The recorded bottom/top scalar for a type; throws UnsupportedType otherwise.
Rational recorded_residue_scalar(const CartanType& type);

struct TorusInvariant {
  /// Exponents (n_0, ..., n_l) of the generating monomial.
  std::vector<int> exponents;
  /// Total degree sum n_i.
  int degree = 0;
  /// All T-invariant monomials up to degree 2h are powers of the generator.
  bool lattice_check = false;
};

/// Generator of the T-invariant monomials in the coordinates z_0..z_l of V_P*
/// for an Iwahori, from the kernel of the weight matrix [-theta, alpha_1..].
/// Throws PreconditionError unless p is an Iwahori.
TorusInvariant torus_invariant_generator(const Parahoric& p);

}  // namespace loopalg
