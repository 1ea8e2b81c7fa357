#pragma once

// Finite root systems and Chevalley bases.
//
// Conventions
//   Cartan matrix    A_ij = <alpha_i^vee, alpha_j>.
//   Roots            integer vectors in the simple-root basis.
//   Basis lines      0..l-1 the coroots h_i, then positive root vectors e_a in
//                    (height, reverse-lex) order, then f_a in the same order.
//   Signs            for a non-simple positive root a, let i be the least index
//                    with b = a - alpha_i a root and p the largest k with
//                    b - k alpha_i a root. Then e_a = [e_i, e_b]/(p+1) and
//                    f_a = [f_b, f_i]/(p+1), so N_{alpha_i, b} = p + 1 for
//                    these extraspecial pairs and [e_a, f_a] = h_a.
//   G2               alpha_1 long, A = [[2,-1],[-3,2]], theta = 2a1 + 3a2.
//                    The transposed form swaps the two nodes.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loopalg/linalg.hpp"
#include "loopalg/rational.hpp"

namespace loopalg {

enum class Family { A, B, C, D, E, F, G };

struct CartanType {
  Family family = Family::A;
  int rank = 1;
  /// Only meaningful for G2: the Cartan matrix is transposed (nodes swapped).
  bool transposed = false;

  /// "A2", "G2"; transposed G2 is "G2t".
  std::string name() const;
  /// Accepts the output of name(), case-insensitively.
  static CartanType parse(std::string_view text);
  /// Langlands dual: A and D are self-dual, B <-> C, G2 -> transposed G2.
  CartanType dual() const;
  /// Types whose invariant theory is handled through a characteristic
  /// polynomial of the defining representation: A1-A4, C2, G2.
  bool has_invariant_support() const;

  friend bool operator==(const CartanType&, const CartanType&) = default;
};

using Root = std::vector<int>;
using Element = std::vector<Rational>;

class RootDatum {
 public:
  /// Throws UnsupportedType outside A1-A8, B2-B8, C2-C8, D4-D8, G2.
  explicit RootDatum(const CartanType& type);

  const CartanType& type() const { return type_; }
  int rank() const { return rank_; }
  int dim() const { return int(lines_.size()); }
  int rep_dim() const { return rep_dim_; }

  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  /// Positive roots followed by their negatives.
  const std::vector<Root>& roots() const { return roots_; }
  const Root& highest_root() const { return positive_.back(); }
  /// (a_0, ..., a_l) with a_0 = 1.
  const std::vector<int>& kac_labels() const { return labels_; }
  int coxeter_number() const { return coxeter_; }

  // Basis lines.
  bool is_cartan(int line) const { return line < rank_; }
  /// Root of a line; the zero vector for Cartan lines.
  const Root& root_of(int line) const { return lines_[line]; }
  int height(int line) const;
  /// Basis line of a root, or -1.
  int line_of(const Root& root) const;
  int simple_line(int i) const { return rank_ + i; }
  int negative_simple_line(int i) const { return rank_ + int(positive_.size()) + i; }
  int theta_line() const { return rank_ + int(positive_.size()) - 1; }
  int negative_theta_line() const { return dim() - 1; }
  /// Human-readable line name: "h1", "e[1,1]", "f[0,1]".
  std::string line_name(int line) const;

  /// <beta, alpha_i^vee>-style pairing: for a Cartan element with
  /// coroot-basis coefficients c, returns alpha(h) = sum_ij c_i A_ij alpha_j.
  Rational root_value(const Element& cartan_coeffs, const Root& alpha) const;
  /// Coroot-basis coefficients of h_alpha = [e_alpha, f_alpha].
  const Element& coroot(int positive_index) const { return coroots_[positive_index]; }

  /// Matrix of a basis line in the defining representation.
  const Matrix<Rational>& rep(int line) const { return rep_[line]; }

  /// [X_a, X_b] as sparse (line, coefficient) pairs.
  const std::vector<std::pair<int, Rational>>& bracket_lines(int a, int b) const {
    return table_[std::size_t(a) * dim() + b];
  }

  /// N_{alpha,beta} with [e_alpha, e_beta] = N e_{alpha+beta}; 0 if
  /// alpha+beta is not a root. Both arguments may be negative roots.
  Rational structure_constant(const Root& alpha, const Root& beta) const;

  /// Bracket of coefficient vectors over any ring R with R * Rational.
  template <class R>
  std::vector<R> bracket(const std::vector<R>& x, const std::vector<R>& y) const {
    std::vector<R> out(dim(), R(0));
    for (int a = 0; a < dim(); ++a) {
      if (x[a] == R(0)) continue;
      for (int b = 0; b < dim(); ++b) {
        if (y[b] == R(0)) continue;
        const auto& terms = bracket_lines(a, b);
        if (terms.empty()) continue;
        R xy = x[a] * y[b];
        for (const auto& [c, n] : terms) out[c] = out[c] + xy * n;
      }
    }
    return out;
  }

  /// Image in the defining representation.
  template <class R>
  Matrix<R> to_matrix(const std::vector<R>& x) const {
    Matrix<R> m(rep_dim_, rep_dim_);
    for (int a = 0; a < dim(); ++a) {
      if (x[a] == R(0)) continue;
      const auto& ra = rep_[a];
      for (int i = 0; i < rep_dim_; ++i)
        for (int j = 0; j < rep_dim_; ++j)
          if (!loopalg::is_zero(ra(i, j))) m(i, j) = m(i, j) + x[a] * ra(i, j);
    }
    return m;
  }

  /// Coordinates of a defining-representation matrix; throws
  /// PreconditionError when the matrix is not in the algebra.
  Element decompose(const Matrix<Rational>& m) const;

  /// Matrix of ad x on the basis (column b = [x, X_b]).
  Matrix<Rational> ad(const Element& x) const;

  /// Trace form tr(rep(a) rep(b)).
  const Matrix<Rational>& gram() const { return gram_; }

  Element basis_vector(int line) const;

 private:
  void build_roots();
  void build_representation();
  void build_table();
  void build_labels();

  CartanType type_;
  int rank_ = 0;
  int rep_dim_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> positive_, roots_, lines_;
  std::vector<Element> coroots_;
  std::vector<int> labels_;
  int coxeter_ = 0;
  std::vector<Matrix<Rational>> rep_;
  std::vector<std::vector<std::pair<int, Rational>>> table_;
  Matrix<Rational> gram_;
  // Decomposition data: entry positions and inverse of the square system.
  std::vector<std::pair<int, int>> pivots_;
  Matrix<Rational> pivot_inverse_;
};

/// Cached, immutable root datum; thread-safe.
std::shared_ptr<const RootDatum> build_root_datum(const CartanType& type);

struct PrincipalTriple {
  Element e, h, f;
  /// The base {beta_1..beta_l} the triple is built on.
  std::vector<Root> base;
};

/// f = sum f_{alpha_i}, alpha_i(h) = 2, e = sum c_i e_{alpha_i} from [e,f] = h.
PrincipalTriple principal_triple(const RootDatum& rd);

/// Same construction for another base of the root system (a W-translate of
/// the simple roots).
PrincipalTriple principal_triple(const RootDatum& rd, const std::vector<Root>& base);

/// Degrees d_1 <= ... <= d_l from ad h on ker ad e.
std::vector<int> fundamental_degrees(const RootDatum& rd);

/// dim ker ad x = l and the minimal polynomial of ad x is squarefree.
bool is_regular_semisimple(const RootDatum& rd, const Element& x);

/// Characteristic polynomial det(x - M) as a UPoly coefficient vector,
/// low degree first.
std::vector<Rational> characteristic_polynomial(const Matrix<Rational>& m);

}  // namespace loopalg
