#pragma once

// Standard parahorics, Moy-Prasad lattices and Kac gradings of g((t)).
//
// A standard parahoric P is given by Kac coordinates (s_0, ..., s_l) with
// s_i in {0, 1}. Its barycenter x_P satisfies alpha_i(x_P) = s_i / m for
// i >= 1, where m = sum a_i s_i. The cocharacter eta_P = m x_P (taking the
// vertex x_0 = 0) pairs with a root alpha = sum c_j alpha_j as
// <eta_P, alpha> = sum c_j s_j.
//
// Lattices are recorded line by line: X_b t^k lies in p(n) exactly when
// k >= order[b]. For roots, order = ceil((n - <eta_P, alpha>) / m); for Cartan
// lines, order = ceil(n / m).

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "loopalg/laurent.hpp"
#include "loopalg/rootdata.hpp"

namespace loopalg {

/// The affine root alpha + level * delta. Cartan lines carry a zero finite part.
struct AffineRoot {
  Root finite_part;
  Exponent level = 0;
  friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
};

class Parahoric {
 public:
  /// Throws InvalidCoordinates unless kac_coords has l+1 entries in {0, 1}
  /// that are not all zero.
  Parahoric(std::shared_ptr<const RootDatum> rd, std::vector<int> kac_coords);

  const RootDatum& root_datum() const { return *rd_; }
  std::shared_ptr<const RootDatum> root_datum_ptr() const { return rd_; }
  const std::vector<int>& kac_coords() const { return kac_; }
  int m() const { return m_; }
  /// alpha_i(x_P) = s_i / m for the simple affine roots alpha_0, ..., alpha_l.
  const std::vector<Rational>& barycenter_values() const { return bary_; }
  bool is_iwahori() const { return m_ == rd_->coxeter_number(); }
  bool is_hyperspecial() const { return m_ == 1; }

  /// <eta_P, alpha>.
  int eta_pairing(const Root& alpha) const;
  /// <eta_P, root of line>; zero on Cartan lines.
  int eta_pairing(int line) const;

 private:
  std::shared_ptr<const RootDatum> rd_;
  std::vector<int> kac_;
  int m_ = 0;
  std::vector<Rational> bary_;
};

Parahoric build_parahoric(std::shared_ptr<const RootDatum> rd, std::vector<int> kac_coords);

struct MPLattice {
  Parahoric parahoric;
  int n = 0;
  /// 0 for lattices in g((t)); 1 for lattices of forms X (dt/t).
  int form_degree = 0;
  /// Minimal admitted t-exponent per basis line.
  std::vector<Exponent> order;

  /// Affine roots X_b t^{order[b]} generating the lattice over O.
  std::vector<AffineRoot> generators() const;
  /// Every coordinate has vanishing coefficients below its order. Throws
  /// WindowUnderflow when a needed coefficient is outside a window.
  bool contains(const TwistedElement& x) const;
  /// Same lattice multiplied by t^k.
  MPLattice shifted(Exponent k) const;
  /// Bracket-closed for the exponents present (checked on basis pairs).
  bool is_subalgebra() const;
};

/// p(n), for any integer n.
MPLattice moy_prasad(const Parahoric& p, int n);

/// Annihilator of p(n) under Res kappa(x, y) dt/t, as a lattice of forms.
/// Computed from the Killing pairing on basis lines and compared with
/// p(1 - n) dt/t; throws MismatchError if they differ.
MPLattice orthogonal_lattice(const Parahoric& p, int n);

/// Annihilator of a form lattice back in g((t)) (brute force).
MPLattice annihilator_of_forms(const MPLattice& forms);

struct KacGrading {
  int m = 1;
  /// Piece i in [0, m): basis lines of g_0(i).
  std::map<int, std::vector<int>> pieces;
  /// eta_P in fundamental-coweight coordinates: <eta_P, alpha_i> for i >= 1.
  std::vector<int> eta;
  /// dim g_0(0) = dim of the Levi of P.
  int levi_dim() const;
  /// Piece containing a basis line.
  int piece_of(int line) const;
};

/// Grading of g by <eta_P, alpha> mod m. Throws UnsupportedTwisted for
/// twist order r != 1. Also checks that X_alpha enters p(n) at the least
/// exponent j = <eta_P, alpha> + m k >= n, throwing MismatchError otherwise.
KacGrading kac_grading(const Parahoric& p, int twist_order = 1);

/// Outcome of the principality test.
struct PrincipalWitness {
  bool principal = false;
  /// When principal: v = w rho^vee with v = eta_P mod m P^vee, in
  /// fundamental-coweight coordinates.
  std::vector<int> v;
  /// {beta : <v, beta> = 1}, a base of the root system.
  std::vector<Root> base;
  /// principal_triple on that base; e lies in g_0(1), f in g_0(-1).
  std::optional<PrincipalTriple> triple;
};

/// The grading is principal when Ad(eta_P(zeta_m)) is conjugate to
/// Ad(rho^vee(zeta_m)). Decided exactly: rho^vee / m and x_P + omega^vee
/// (omega^vee zero or minuscule) are reduced into the fundamental alcove by
/// affine reflections and compared.
PrincipalWitness principal_witness(const Parahoric& p);

bool is_principal(const Parahoric& p);

/// Every {0,1} Kac coordinate vector of length l+1 except all zeros.
std::vector<std::vector<int>> all_standard_kac_coords(const RootDatum& rd);

}  // namespace loopalg
