#include "loopalg/affine.hpp"

#include <algorithm>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

// ---------------------------------------------------------------- parahorics

Parahoric::Parahoric(std::shared_ptr<const RootDatum> rd, std::vector<int> kac_coords)
    : rd_(std::move(rd)), kac_(std::move(kac_coords)) {
  const auto& labels = rd_->kac_labels();
  if (int(kac_.size()) != rd_->rank() + 1)
    throw InvalidCoordinates("expected " + std::to_string(rd_->rank() + 1) +
                             " Kac coordinates, got " + std::to_string(kac_.size()));
  for (int s : kac_)
    if (s != 0 && s != 1) throw InvalidCoordinates("Kac coordinates must be 0 or 1");
  for (std::size_t i = 0; i < kac_.size(); ++i) m_ += labels[i] * kac_[i];
  if (m_ == 0) throw InvalidCoordinates("Kac coordinates are all zero");
  for (int s : kac_) bary_.push_back(Rational(s, m_));
  for (auto& q : bary_) q.canonicalize();
}

int Parahoric::eta_pairing(const Root& alpha) const {
  int total = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) total += alpha[j] * kac_[j + 1];
  return total;
}

int Parahoric::eta_pairing(int line) const { return eta_pairing(rd_->root_of(line)); }

Parahoric build_parahoric(std::shared_ptr<const RootDatum> rd, std::vector<int> kac_coords) {
  return Parahoric(std::move(rd), std::move(kac_coords));
}

std::vector<std::vector<int>> all_standard_kac_coords(const RootDatum& rd) {
  const int n = rd.rank() + 1;
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------- lattices

MPLattice moy_prasad(const Parahoric& p, int n) {
  const RootDatum& rd = p.root_datum();
  MPLattice lat{p, n, 0, {}};
  lat.order.resize(rd.dim());
  for (int b = 0; b < rd.dim(); ++b)
    lat.order[b] = rd.is_cartan(b) ? ceil_div(n, p.m()) : ceil_div(n - p.eta_pairing(b), p.m());
  return lat;
}

std::vector<AffineRoot> MPLattice::generators() const {
  const RootDatum& rd = parahoric.root_datum();
  std::vector<AffineRoot> out;
  for (int b = 0; b < rd.dim(); ++b) out.push_back({rd.root_of(b), order[b]});
  return out;
}

bool MPLattice::contains(const TwistedElement& x) const {
  if (x.form_degree != form_degree || x.value.size() != order.size()) return false;
  for (std::size_t b = 0; b < order.size(); ++b) {
    const LaurentPoly& f = x.value[b];
    if (!f.terms().empty()) {
      if (f.terms().begin()->first < order[b]) return false;
    } else if (!f.is_exact() && f.hi() < order[b] - 1) {
      throw WindowUnderflow("coordinate " + std::to_string(b) + " is unknown below t^" +
                            std::to_string(order[b]));
    }
  }
  return true;
}

MPLattice MPLattice::shifted(Exponent k) const {
  MPLattice out = *this;
  for (auto& o : out.order) o += k;
  return out;
}

bool MPLattice::is_subalgebra() const {
  const RootDatum& rd = parahoric.root_datum();
  for (int a = 0; a < rd.dim(); ++a)
    for (int b = 0; b < rd.dim(); ++b)
      for (const auto& [c, coeff] : rd.bracket_lines(a, b))
        if (order[a] + order[b] < order[c]) return false;
  return true;
}

namespace {

// Least exponent for each line whose monomials pair to zero with every
// monomial X_a t^i, i >= order[a], under Res kappa(., .) dt/t.
std::vector<Exponent> annihilator_orders(const RootDatum& rd, const std::vector<Exponent>& order) {
  const auto& gram = rd.gram();
  std::vector<Exponent> out(rd.dim());
  for (int b = 0; b < rd.dim(); ++b) {
    bool paired = false;
    for (int a = 0; a < rd.dim(); ++a) {
      if (is_zero(gram(a, b))) continue;
      Exponent need = 1 - order[a];
      out[b] = paired ? std::max(out[b], need) : need;
      paired = true;
    }
    if (!paired) throw MismatchError("trace form is degenerate on line " + rd.line_name(b));
  }
  return out;
}

}  // namespace

MPLattice orthogonal_lattice(const Parahoric& p, int n) {
  const RootDatum& rd = p.root_datum();
  MPLattice brute{p, n, 1, annihilator_orders(rd, moy_prasad(p, n).order)};
  MPLattice closed = moy_prasad(p, 1 - n);
  if (closed.order != brute.order) {
    for (int b = 0; b < rd.dim(); ++b)
      if (closed.order[b] != brute.order[b])
        throw MismatchError("orthogonal of p(" + std::to_string(n) + ") at " + rd.line_name(b) +
                            ": annihilator gives t^" + std::to_string(brute.order[b]) +
                            ", p(1-n) gives t^" + std::to_string(closed.order[b]));
  }
  return brute;
}

MPLattice annihilator_of_forms(const MPLattice& forms) {
  const RootDatum& rd = forms.parahoric.root_datum();
  return MPLattice{forms.parahoric, forms.n, 0, annihilator_orders(rd, forms.order)};
}

// ---------------------------------------------------------------- grading

int KacGrading::levi_dim() const {
  auto it = pieces.find(0);
  return it == pieces.end() ? 0 : int(it->second.size());
}

int KacGrading::piece_of(int line) const {
  for (const auto& [i, lines] : pieces)
    if (std::find(lines.begin(), lines.end(), line) != lines.end()) return i;
  return -1;
}

KacGrading kac_grading(const Parahoric& p, int twist_order) {
  if (twist_order != 1)
    throw UnsupportedTwisted("only untwisted (r = 1) gradings are supported, got r = " +
                             std::to_string(twist_order));
  const RootDatum& rd = p.root_datum();
  const int m = p.m();
  KacGrading g;
  g.m = m;
  g.eta.assign(p.kac_coords().begin() + 1, p.kac_coords().end());
  for (int i = 0; i < m; ++i) g.pieces[i];
  for (int b = 0; b < rd.dim(); ++b) g.pieces[mod(p.eta_pairing(b), m)].push_back(b);

  // X_alpha t^k has degree <eta, alpha> + m k in the graded realization.
  for (int n = -m; n <= 2 * m; ++n) {
    MPLattice lat = moy_prasad(p, n);
    for (int b = rd.rank(); b < rd.dim(); ++b) {
      Exponent j = p.eta_pairing(b) + Exponent(m) * lat.order[b];
      if (j < n || j - m >= n)
        throw MismatchError("line " + rd.line_name(b) + " enters p(" + std::to_string(n) +
                            ") in degree " + std::to_string(j));
    }
  }
  return g;
}

// ---------------------------------------------------------------- principality

namespace {

// Points of t_R in coordinates c_k = alpha_k(x).
using Point = std::vector<Rational>;

struct Alcove {
  const RootDatum& rd;
  std::vector<Rational> theta_coroot;  // <theta^vee, alpha_k>

  explicit Alcove(const RootDatum& r) : rd(r) {
    const int l = rd.rank();
    const Element& tc = rd.coroot(int(rd.positive_roots().size()) - 1);
    for (int k = 0; k < l; ++k) {
      Root ak(l, 0);
      ak[k] = 1;
      theta_coroot.push_back(rd.root_value(tc, ak));
    }
  }

  Rational theta(const Point& x) const {
    Rational s = 0;
    const Root& th = rd.highest_root();
    for (std::size_t k = 0; k < x.size(); ++k) s += th[k] * x[k];
    return s;
  }

  // Linear reflection: index i >= 0 is s_i, -1 is s_theta.
  void reflect(Point& x, int i) const {
    if (i >= 0) {
      Rational ci = x[i];
      for (std::size_t k = 0; k < x.size(); ++k) x[k] -= rd.cartan_matrix()[i][k] * ci;
    } else {
      Rational th = theta(x);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] -= th * theta_coroot[k];
    }
  }

  // Moves x into the closed fundamental alcove; returns the linear parts used.
  std::vector<int> reduce(Point& x) const {
    std::vector<int> word;
    for (;;) {
      int i = -2;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] < 0) {
          i = int(k);
          break;
        }
      if (i >= 0) {
        reflect(x, i);
        word.push_back(i);
        continue;
      }
      Rational th = theta(x);
      if (th <= 1) return word;
      for (std::size_t k = 0; k < x.size(); ++k) x[k] -= (th - 1) * theta_coroot[k];
      word.push_back(-1);
    }
  }
};

}  // namespace

PrincipalWitness principal_witness(const Parahoric& p) {
  const RootDatum& rd = p.root_datum();
  const int l = rd.rank(), m = p.m();
  Alcove alcove(rd);

  Point target(l, Rational(1, m));
  for (auto& q : target) q.canonicalize();
  std::vector<int> w1 = alcove.reduce(target);

  std::vector<int> shifts{-1};
  for (int j = 0; j < l; ++j)
    if (rd.kac_labels()[j + 1] == 1) shifts.push_back(j);

  PrincipalWitness out;
  for (int j : shifts) {
    Point y(p.barycenter_values().begin() + 1, p.barycenter_values().end());
    if (j >= 0) y[j] += 1;
    std::vector<int> w2 = alcove.reduce(y);
    if (y != target) continue;

    Point v(l, Rational(1));
    for (int i : w1) alcove.reflect(v, i);
    for (auto it = w2.rbegin(); it != w2.rend(); ++it) alcove.reflect(v, *it);
    for (int k = 0; k < l; ++k) {
      if (v[k].get_den() != 1) throw MismatchError("Weyl translate of rho^vee is not integral");
      long vk = v[k].get_num().get_si();
      if (mod(int(vk - p.kac_coords()[k + 1]), m) != 0)
        throw MismatchError("Weyl translate of rho^vee does not match eta_P mod m");
      out.v.push_back(int(vk));
    }
    for (const auto& beta : rd.roots()) {
      Rational pair = 0;
      for (int k = 0; k < l; ++k) pair += beta[k] * v[k];
      if (pair == 1) out.base.push_back(beta);
    }
    if (int(out.base.size()) != l) throw MismatchError("translate of rho^vee is not regular");
    out.principal = true;
    out.triple = principal_triple(rd, out.base);
    return out;
  }
  return out;
}

bool is_principal(const Parahoric& p) { return principal_witness(p).principal; }

}  // namespace loopalg
