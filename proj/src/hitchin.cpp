#include "loopalg/hitchin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "loopalg/errors.hpp"

namespace loopalg {

std::string Generator::str() const {
  return (kind == GeneratorKind::CharPolyCoefficient ? "c" : "tr^") + std::to_string(degree);
}

// ---------------------------------------------------------------- invariants

namespace {

// x + e d with e^2 = 0, as Laurent polynomials in e truncated after e^1.
std::vector<LaurentPoly> dual_point(const Element& x, const Element& d) {
  std::vector<LaurentPoly> out;
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (x[b] == 0 && d[b] == 0)
      out.emplace_back();
    else
      out.push_back(LaurentPoly::truncated({{0, x[b]}, {1, d[b]}}, 0, 1));
  }
  return out;
}

Element random_element(const RootDatum& rd, SplitMix64& rng) {
  Element x(rd.dim());
  for (auto& c : x) c = rng.rational();
  return x;
}

}  // namespace

InvariantSystem::InvariantSystem(std::shared_ptr<const RootDatum> rd) : rd_(std::move(rd)) {
  if (!rd_->type().has_invariant_support())
    throw UnsupportedType("no invariant generators for type " + rd_->type().name());
  degrees_ = fundamental_degrees(*rd_);
  for (int d : degrees_) gens_.push_back({GeneratorKind::CharPolyCoefficient, d});

  SplitMix64 rng(0x1D);
  Element x = random_element(*rd_, rng);
  for (int i = rank() - 1; i >= 0 && jacobian_rank(x) < rank(); --i)
    gens_[i].kind = GeneratorKind::TracePower;
  if (jacobian_rank(x) < rank())
    throw PreconditionError("invariant generators are dependent for type " + rd_->type().name());
}

bool InvariantSystem::check_ad_invariance(SplitMix64& rng, int points) const {
  for (int k = 0; k < points; ++k) {
    Element x = random_element(*rd_, rng), y = random_element(*rd_, rng);
    for (const auto& v : evaluate(dual_point(x, rd_->bracket(y, x))))
      if (v.coeff(1) != 0) return false;
  }
  return true;
}

int InvariantSystem::jacobian_rank(const Element& x) const {
  Matrix<Rational> jac(rank(), rd_->dim());
  for (int b = 0; b < rd_->dim(); ++b) {
    std::vector<LaurentPoly> v = evaluate(dual_point(x, rd_->basis_vector(b)));
    for (int i = 0; i < rank(); ++i) jac(i, b) = v[i].coeff(1);
  }
  return loopalg::rank(jac);
}

std::vector<std::optional<Exponent>> HitchinValue::pole_orders() const {
  std::vector<std::optional<Exponent>> out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const LaurentPoly& g = components[i];
    if (g.is_zero() && g.is_exact())
      out.push_back(std::nullopt);
    else
      out.push_back(degrees[i] - g.valuation());
  }
  return out;
}

HitchinValue chevalley_map(const InvariantSystem& inv, const TwistedElement& xi) {
  if (xi.form_degree != 1)
    throw PreconditionError("the Hitchin map takes g-valued 1-forms (form degree 1)");
  if (int(xi.value.size()) != inv.root_datum().dim())
    throw PreconditionError("element has the wrong number of coordinates");
  return HitchinValue{inv.evaluate(xi.value), inv.degrees()};
}

OrderBound hitchin_bounds(const Parahoric& p, int n) {
  OrderBound out;
  for (int d : fundamental_degrees(p.root_datum()))
    out.b.push_back(d - ceil_div(long(d) * (1 - n), p.m()));
  return out;
}

// ---------------------------------------------------------------- sampling

namespace {

TwistedElement sample_lattice(const MPLattice& lat, SplitMix64& rng) {
  TwistedElement x;
  x.form_degree = lat.form_degree;
  for (Exponent o : lat.order) {
    std::map<Exponent, Rational> terms;
    for (int k = 0; k < kSampleDepth; ++k) terms[o + k] = rng.rational();
    x.value.push_back(LaurentPoly::exact(terms));
  }
  return x;
}

std::string describe(const RootDatum& rd, const TwistedElement& x) {
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < rd.dim(); ++b) {
    if (x.value[b].is_zero() && x.value[b].is_exact()) continue;
    if (!first) os << "; ";
    first = false;
    os << rd.line_name(b) << ": " << x.value[b].str();
  }
  os << " (dt/t)";
  return os.str();
}

// Runs body(k) for k in [0, count) on `jobs` threads.
template <class Body>
void parallel_for(int count, int jobs, Body body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      for (int k = j; k < count; k += jobs) body(k);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

TwistedElement sample_orthogonal(const Parahoric& p, int n, SplitMix64& rng) {
  return sample_lattice(orthogonal_lattice(p, n), rng);
}

ContainmentReport verify_containment(const InvariantSystem& inv, const Parahoric& p, int n,
                                     int samples, std::uint64_t seed, int jobs) {
  ContainmentReport report;
  report.bounds = hitchin_bounds(p, n);
  report.samples = samples;
  const MPLattice perp = orthogonal_lattice(p, n);
  const int l = inv.rank();

  std::vector<std::vector<std::optional<Exponent>>> orders(samples);
  std::vector<TwistedElement> elements(samples);
  parallel_for(samples, jobs, [&](int k) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(k));
    elements[k] = sample_lattice(perp, rng);
    orders[k] = chevalley_map(inv, elements[k]).pole_orders();
  });

  report.max_orders.assign(l, std::nullopt);
  for (int k = 0; k < samples; ++k)
    for (int i = 0; i < l; ++i) {
      const auto& o = orders[k][i];
      if (!o) continue;
      if (!report.max_orders[i] || *o > *report.max_orders[i]) report.max_orders[i] = o;
      if (*o > report.bounds.b[i] && report.pass) {
        report.pass = false;
        report.violation_index = std::uint64_t(k);
        report.violation_element = describe(inv.root_datum(), elements[k]);
      }
    }
  return report;
}

void require_containment(const ContainmentReport& report) {
  if (report.pass) return;
  throw ContainmentViolation("sample " + std::to_string(*report.violation_index) +
                             " exceeds the pole-order bound: " + report.violation_element);
}

// ---------------------------------------------------------------- Kostant section

KostantSection::KostantSection(const InvariantSystem& inv, PrincipalTriple triple)
    : triple_(std::move(triple)) {
  const RootDatum& rd = inv.root_datum();
  const auto& degrees = inv.degrees();
  const int l = inv.rank(), N = rd.dim();
  for (int i = 1; i < l; ++i)
    if (degrees[i] == degrees[i - 1])
      throw PreconditionError("repeated fundamental degree; triangular slice coordinates need "
                              "distinct degrees");

  Element hc(triple_.h.begin(), triple_.h.begin() + l);
  Matrix<Rational> ade = rd.ad(triple_.e);
  for (int d : degrees) {
    std::vector<int> cols;
    for (int b = l; b < N; ++b)
      if (rd.root_value(hc, rd.root_of(b)) == 2 * (d - 1)) cols.push_back(b);
    Matrix<Rational> restricted(N, int(cols.size()));
    for (int a = 0; a < N; ++a)
      for (std::size_t c = 0; c < cols.size(); ++c) restricted(a, int(c)) = ade(a, cols[c]);
    auto kernel = nullspace(restricted);
    if (kernel.size() != 1)
      throw PreconditionError("ker ad e' in degree " + std::to_string(d) + " has dimension " +
                              std::to_string(kernel.size()));
    Element p(N, 0);
    for (std::size_t c = 0; c < cols.size(); ++c) p[cols[c]] = kernel[0][c];
    basis_.push_back(p);
  }

  std::vector<MPoly> x(N);
  for (int b = 0; b < N; ++b) x[b] = MPoly(triple_.f[b]);
  for (int i = 0; i < l; ++i) {
    MPoly y = MPoly::variable(i, l);
    for (int b = 0; b < N; ++b)
      if (basis_[i][b] != 0) x[b] += y * basis_[i][b];
  }
  invariants_ = inv.evaluate(x);
  for (int i = 0; i < l; ++i) {
    if (!invariants_[i].is_weighted_homogeneous(degrees, degrees[i]))
      throw MismatchError("slice invariant " + std::to_string(i) + " is not weighted homogeneous");
    MPoly::Monomial mono(i + 1, 0);
    mono[i] = 1;
    leading_.push_back(invariants_[i].coeff(mono));
    if (leading_.back() == 0)
      throw PreconditionError("slice invariant " + std::to_string(i) + " does not involve y" +
                              std::to_string(i + 1));
    lower_.push_back(invariants_[i] - MPoly::variable(i, l) * leading_.back());
    for (const auto& [m, c] : lower_.back().terms())
      for (std::size_t j = i; j < m.size(); ++j)
        if (m[j] != 0) throw MismatchError("slice invariants are not triangular");
  }
}

// ---------------------------------------------------------------- surjectivity

namespace {

// sum c_j u^j  ->  sum c_j t^{(j - offset) / m}; every j must be = offset mod m.
LaurentPoly descend(const LaurentPoly& z, Exponent offset, int m) {
  std::map<Exponent, Rational> terms;
  for (const auto& [j, c] : z.terms()) {
    Exponent s = j - offset;
    if (floor_div(s, m) * m != s)
      throw SurjectivityFailure("term u^" + std::to_string(j) + " is off the grading");
    terms[s / m] = c;
  }
  if (z.is_exact()) return LaurentPoly::exact(terms);
  Exponent hi = floor_div(z.hi() - offset, m);
  return LaurentPoly::truncated(terms, terms.empty() ? hi + 1 : terms.begin()->first, hi);
}

struct SurjectivityData {
  PrincipalWitness witness;
  KostantSection section;
};

SurjectivityData prepare(const InvariantSystem& inv, const Parahoric& p) {
  PrincipalWitness w = principal_witness(p);
  if (!w.principal)
    throw PreconditionError("parahoric with Kac coordinates is not principal; surjectivity "
                            "needs a principal grading");
  KostantSection ks(inv, *w.triple);
  return {std::move(w), std::move(ks)};
}

TwistedElement preimage(const InvariantSystem& inv, const Parahoric& p, const SurjectivityData& data,
                        const std::vector<LaurentPoly>& target) {
  const RootDatum& rd = inv.root_datum();
  const int m = p.m();
  std::vector<LaurentPoly> c;
  for (const auto& g : target) c.push_back(ramified_pullback(g, m));
  std::vector<LaurentPoly> y = data.section.section(c);

  TwistedElement xi;
  xi.form_degree = 1;
  for (int b = 0; b < rd.dim(); ++b) {
    if (rd.is_cartan(b)) {
      xi.value.push_back(descend(y[b], 0, m));
      continue;
    }
    const Root& alpha = rd.root_of(b);
    Exponent v_pair = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k) v_pair += alpha[k] * data.witness.v[k];
    xi.value.push_back(descend(y[b].shift(v_pair), p.eta_pairing(b), m));
  }
  return xi;
}

LaurentPoly random_target(int d, int m, SplitMix64& rng) {
  Exponent lo = -floor_div(d, m);
  std::map<Exponent, Rational> terms{{lo, rng.nonzero_rational()}};
  for (int k = 1; k < kSampleDepth; ++k) terms[lo + k] = rng.rational();
  return LaurentPoly::exact(terms);
}

}  // namespace

TwistedElement surjectivity_preimage(const InvariantSystem& inv, const Parahoric& p,
                                     const std::vector<LaurentPoly>& target) {
  return preimage(inv, p, prepare(inv, p), target);
}

SurjectivityReport verify_surjectivity(const InvariantSystem& inv, const Parahoric& p, int trials,
                                       std::uint64_t seed, int n) {
  if (n != 2) throw PreconditionError("the surjectivity statement concerns n = 2");
  SurjectivityData data = prepare(inv, p);
  SurjectivityReport report;
  report.bounds = hitchin_bounds(p, 2);
  report.trials = trials;
  report.attained.assign(inv.rank(), false);
  const MPLattice perp = orthogonal_lattice(p, 2);

  for (int k = 0; k < trials && report.pass; ++k) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(k));
    std::vector<LaurentPoly> target;
    for (int d : inv.degrees()) target.push_back(random_target(d, p.m(), rng));
    TwistedElement xi = preimage(inv, p, data, target);
    if (!perp.contains(xi)) {
      report.pass = false;
      report.failure = "trial " + std::to_string(k) + ": preimage is not in p(2)^perp";
      break;
    }
    HitchinValue value = chevalley_map(inv, xi);
    if (value.components != target) {
      report.pass = false;
      report.failure = "trial " + std::to_string(k) + ": chevalley map does not return the target";
      break;
    }
    auto orders = value.pole_orders();
    for (int i = 0; i < inv.rank(); ++i)
      if (orders[i] && *orders[i] == report.bounds.b[i]) report.attained[i] = true;
  }
  if (report.pass && std::find(report.attained.begin(), report.attained.end(), false) !=
                         report.attained.end()) {
    report.pass = false;
    report.failure = "a boundary order was never attained";
  }
  return report;
}

CorollaryReport verify_n1_corollary(const InvariantSystem& inv, const Parahoric& p, int samples,
                                    std::uint64_t seed) {
  const RootDatum& rd = inv.root_datum();
  Parahoric iwahori(inv.root_datum_ptr(), std::vector<int>(rd.rank() + 1, 1));
  const MPLattice source = orthogonal_lattice(iwahori, 1);
  const MPLattice perp = orthogonal_lattice(p, 1);
  CorollaryReport report;
  report.bounds = hitchin_bounds(p, 1);
  report.samples = samples;
  report.attained.assign(inv.rank(), false);
  for (int k = 0; k < samples; ++k) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(k));
    TwistedElement xi = sample_lattice(source, rng);
    if (!perp.contains(xi)) report.pass = false;
    auto orders = chevalley_map(inv, xi).pole_orders();
    for (int i = 0; i < inv.rank(); ++i) {
      if (!orders[i]) continue;
      if (*orders[i] > report.bounds.b[i]) report.pass = false;
      if (*orders[i] == report.bounds.b[i]) report.attained[i] = true;
    }
  }
  for (bool a : report.attained) report.pass = report.pass && a;
  return report;
}

// ---------------------------------------------------------------- residues

std::vector<Rational> residue_coordinates(const Parahoric& p, const TwistedElement& xi) {
  const RootDatum& rd = p.root_datum();
  if (!p.is_iwahori()) throw PreconditionError("residue coordinates are set up for the Iwahori");
  // (line, t-exponent) of the basis of V_P, z_0 first.
  std::vector<std::pair<int, Exponent>> v_lines{{rd.negative_theta_line(), 1}};
  for (int i = 0; i < rd.rank(); ++i) v_lines.push_back({rd.simple_line(i), 0});
  std::vector<Rational> z;
  for (const auto& [line, k] : v_lines) {
    Rational s = 0;
    for (int b = 0; b < rd.dim(); ++b)
      if (!is_zero(rd.gram()(b, line))) s += xi.value[b].coeff(-k) * rd.gram()(b, line);
    z.push_back(s);
  }
  return z;
}

namespace {

Rational top_path(const RootDatum& rd, const std::vector<Rational>& z) {
  Rational out = 1;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (int k = 0; k < rd.kac_labels()[i]; ++k) out *= z[i];
  return out;
}

Rational bottom_path(const InvariantSystem& inv, const TwistedElement& xi, int m) {
  HitchinValue v = chevalley_map(inv, xi);
  for (int i = 0; i < inv.rank(); ++i)
    if (v.degrees[i] % m == 0) return v.components[i].coeff(-(v.degrees[i] / m));
  throw PreconditionError("no fundamental degree divisible by m");
}

}  // namespace

Rational recorded_residue_scalar(const CartanType& type) {
  // bottom / top on the element sum_i f_{alpha_i} + e_theta t^{-1}.
  static const std::map<std::string, Rational> table{
      {"A1", Rational(-1)}, {"A2", Rational(-1)},   {"A3", Rational(-1)},
      {"A4", Rational(-1)}, {"C2", Rational(1, 4)}, {"G2", Rational(-1, 432)},
  };
  auto it = table.find(type.name());
  if (it == table.end()) throw UnsupportedType("no recorded residue scalar for " + type.name());
  return it->second;
}

ResidueReport residue_diagram(const InvariantSystem& inv, const Parahoric& p, int samples,
                              std::uint64_t seed) {
  const RootDatum& rd = inv.root_datum();
  if (!p.is_iwahori()) throw PreconditionError("the residue diagram is checked for the Iwahori");
  ResidueReport report;
  report.samples = samples;

  TwistedElement canonical{std::vector<LaurentPoly>(rd.dim()), 1};
  for (int i = 0; i < rd.rank(); ++i) canonical.value[rd.negative_simple_line(i)] = 1;
  canonical.value[rd.theta_line()] = LaurentPoly::monomial(-1);
  Rational top = top_path(rd, residue_coordinates(p, canonical));
  Rational bottom = bottom_path(inv, canonical, p.m());
  report.scalar = bottom / top;
  if (report.scalar == 0 || report.scalar != recorded_residue_scalar(rd.type()))
    throw DiagramMismatch("scalar " + to_string(report.scalar) + " differs from the recorded " +
                          "value for " + rd.type().name());

  const MPLattice perp = orthogonal_lattice(p, 2);
  for (int k = 0; k < samples; ++k) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(k));
    TwistedElement xi = sample_lattice(perp, rng);
    Rational t = top_path(rd, residue_coordinates(p, xi));
    Rational b = bottom_path(inv, xi, p.m());
    if (b != report.scalar * t) {
      report.pass = false;
      report.failure = "sample " + std::to_string(k) + ": bottom " + to_string(b) + ", top " +
                       to_string(t);
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------- torus invariants

TorusInvariant torus_invariant_generator(const Parahoric& p) {
  const RootDatum& rd = p.root_datum();
  if (!p.is_iwahori()) throw PreconditionError("torus invariants are computed for the Iwahori");
  const int l = rd.rank();
  std::vector<Root> weights{rd.highest_root()};
  for (auto& x : weights[0]) x = -x;
  for (int i = 0; i < l; ++i) weights.push_back(rd.root_of(rd.simple_line(i)));

  Matrix<Rational> w(l, l + 1);
  for (int j = 0; j <= l; ++j)
    for (int k = 0; k < l; ++k) w(k, j) = weights[j][k];
  auto kernel = nullspace(w);
  if (kernel.size() != 1) throw MismatchError("weight kernel is not one-dimensional");

  // Primitive integer vector with positive entries.
  mpz_class den = 1, g = 0;
  for (const auto& q : kernel[0]) den = lcm(den, mpz_class(q.get_den()));
  TorusInvariant out;
  std::vector<mpz_class> ints;
  for (const auto& q : kernel[0]) {
    mpz_class v = q.get_num() * (den / q.get_den());
    ints.push_back(v);
    g = gcd(g, v);
  }
  for (auto& v : ints) v /= g;
  if (ints[0] < 0)
    for (auto& v : ints) v = -v;
  for (const auto& v : ints) {
    if (v < 0) throw MismatchError("weight kernel has mixed signs");
    out.exponents.push_back(int(v.get_si()));
    out.degree += int(v.get_si());
  }
  if (out.exponents != rd.kac_labels())
    throw MismatchError("torus invariant exponents differ from the Kac labels");

  // Count weight-zero monomials by degree up to 2h: exactly one in degrees h
  // and 2h, none elsewhere.
  const int top = 2 * rd.coxeter_number();
  std::map<std::pair<int, Root>, long> states{{{0, Root(l, 0)}, 1}};
  for (const auto& wt : weights) {
    std::map<std::pair<int, Root>, long> next;
    for (const auto& [key, count] : states) {
      Root acc = key.second;
      for (int e = 0; key.first + e <= top; ++e) {
        next[{key.first + e, acc}] += count;
        for (int k = 0; k < l; ++k) acc[k] += wt[k];
      }
    }
    states = std::move(next);
  }
  out.lattice_check = true;
  for (int d = 1; d <= top; ++d) {
    auto it = states.find({d, Root(l, 0)});
    long count = it == states.end() ? 0 : it->second;
    long expected = (d % out.degree == 0) ? 1 : 0;
    if (count != expected) out.lattice_check = false;
  }
  return out;
}

}  // namespace loopalg
