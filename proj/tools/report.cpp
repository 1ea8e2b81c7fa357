#include "report.hpp"

#include <sstream>

#include "loopalg/affine.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/hitchin.hpp"
#include "loopalg/opers.hpp"

namespace loopalg::report {

namespace {

std::shared_ptr<const RootDatum> datum(const std::string& type) {
  return build_root_datum(CartanType::parse(type));
}

ordered_json rationals(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

ordered_json orders(const std::vector<std::optional<Exponent>>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(x ? ordered_json(*x) : ordered_json(nullptr));
  return out;
}

ordered_json bounds(const OrderBound& b) {
  ordered_json out = ordered_json::array();
  for (Exponent x : b.b) out.push_back(x);
  return out;
}

ordered_json roots(const std::vector<Root>& rs) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rs) out.push_back(r);
  return out;
}

ordered_json element(const RootDatum& rd, const Element& x) {
  ordered_json out = ordered_json::object();
  for (int b = 0; b < rd.dim(); ++b)
    if (x[b] != 0) out[rd.line_name(b)] = to_string(x[b]);
  return out;
}

ordered_json laurent_matrix(const Matrix<LaurentPoly>& m, const std::string& var) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str(var));
    out.push_back(row);
  }
  return out;
}

ordered_json rational_matrix(const Matrix<Rational>& m) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(row);
  }
  return out;
}

ordered_json header(const std::string& kind, const RootDatum& rd) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = kind;
  j["type"] = rd.type().name();
  return j;
}

const char* status(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

std::vector<int> resolve_kac(const RootDatum& rd, const std::vector<int>& kac) {
  if (!kac.empty()) return kac;
  return std::vector<int>(rd.rank() + 1, 1);
}

ordered_json degrees(const std::string& type) {
  auto rd = datum(type);
  ordered_json j = header("degrees", *rd);
  j["rank"] = rd->rank();
  j["dimension"] = rd->dim();
  j["degrees"] = fundamental_degrees(*rd);
  j["coxeter_number"] = rd->coxeter_number();
  j["kac_labels"] = rd->kac_labels();
  j["dual_type"] = rd->type().dual().name();
  j["invariant_support"] = rd->type().has_invariant_support();
  return j;
}

ordered_json kac(const std::string& type, const std::vector<int>& coords) {
  auto rd = datum(type);
  Parahoric p(rd, resolve_kac(*rd, coords));
  ordered_json j = header("kac", *rd);
  j["kac"] = p.kac_coords();
  j["m"] = p.m();
  j["barycenter"] = rationals(p.barycenter_values());
  j["iwahori"] = p.is_iwahori();
  j["hyperspecial"] = p.is_hyperspecial();
  PrincipalWitness w = principal_witness(p);
  j["principal"] = w.principal;
  if (w.principal) {
    j["witness_cocharacter"] = w.v;
    j["witness_base"] = roots(w.base);
  }
  return j;
}

ordered_json grading(const std::string& type, const std::vector<int>& coords) {
  auto rd = datum(type);
  Parahoric p(rd, resolve_kac(*rd, coords));
  KacGrading g = kac_grading(p);
  ordered_json j = header("grading", *rd);
  j["kac"] = p.kac_coords();
  j["m"] = g.m;
  j["eta"] = g.eta;
  j["levi_dimension"] = g.levi_dim();
  ordered_json pieces = ordered_json::array();
  for (const auto& [i, lines] : g.pieces) {
    ordered_json piece;
    piece["degree"] = i;
    piece["dimension"] = lines.size();
    ordered_json names = ordered_json::array();
    for (int line : lines) names.push_back(rd->line_name(line));
    piece["lines"] = names;
    pieces.push_back(piece);
  }
  j["pieces"] = pieces;
  return j;
}

ordered_json hitchin_image(const std::string& type, const std::vector<int>& coords, int n) {
  auto rd = datum(type);
  Parahoric p(rd, resolve_kac(*rd, coords));
  ordered_json j = header("hitchin-image", *rd);
  j["kac"] = p.kac_coords();
  j["m"] = p.m();
  j["n"] = n;
  j["degrees"] = fundamental_degrees(*rd);
  j["pole_order_bounds"] = bounds(hitchin_bounds(p, n));
  j["principal"] = is_principal(p);
  return j;
}

ordered_json fg(const std::string& type, const std::string& a_text) {
  const CartanType t = CartanType::parse(type);
  const Rational a = parse_rational(a_text);
  Oper op = fg_connection(t, a);
  const RootDatum& rd = *op.rd;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "fg";
  j["type"] = t.name();
  j["dual_type"] = rd.type().name();
  j["a"] = to_string(a);
  j["matrix"] = laurent_matrix(connection_matrix(op), "z");
  j["residue_regular_singular"] = check_residue_rs(op);
  j["irregular_type"] = check_irregular_type(op);
  ordered_json inf = ordered_json::array();
  for (const auto& c : slice_components(at_infinity(op))) inf.push_back(c.str("t"));
  j["components_at_infinity"] = inf;
  if (a != 0) {
    SlopeCertificate cert = slope_certificate(op);
    ordered_json c;
    c["pullback_degree"] = cert.pullback_degree;
    c["gauge_exponent"] = cert.gauge_exponent;
    c["pole_order"] = cert.pole_order;
    c["leading"] = element(rd, cert.leading);
    c["leading_matrix"] = rational_matrix(cert.leading_matrix);
    c["regular_semisimple"] = cert.regular_semisimple;
    c["claim"] = cert.claim;
    j["slope_certificate"] = c;
  } else {
    j["slope_certificate"] = nullptr;
  }
  ScalarODE ode = cyclic_ode(op);
  ordered_json o;
  o["order"] = ode.order;
  o["cyclic_vector"] = ode.cyclic_vector;
  ordered_json q = ordered_json::array();
  for (const auto& c : ode.q) q.push_back(c.str("z"));
  o["coefficients"] = q;
  NewtonPolygon np = newton_polygon_at_infinity(ode);
  ordered_json pts = ordered_json::array();
  for (const auto& [k, v] : np.points) pts.push_back({k, v});
  o["newton_points_at_infinity"] = pts;
  o["max_slope_at_infinity"] = to_string(np.max_slope);
  o["irregularity_at_infinity"] = np.irregularity;
  j["scalar_ode"] = o;
  return j;
}

ordered_json oper_space(const std::string& type, int degree_bound) {
  const CartanType t = CartanType::parse(type);
  OperSpace s = global_oper_space(t, degree_bound);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "oper-space";
  j["type"] = t.name();
  j["dual_type"] = t.dual().name();
  j["degree_bound"] = s.degree_bound;
  j["dimension"] = s.dimension;
  ordered_json basis = ordered_json::array();
  for (const auto& v : s.basis) {
    ordered_json comps = ordered_json::array();
    for (const auto& c : v) comps.push_back(c.str("z"));
    basis.push_back(comps);
  }
  j["basis"] = basis;
  j["spanned_by_theta"] = s.spanned_by_theta;
  return j;
}

ordered_json hitchin_base(const std::string& type) {
  auto rd = datum(type);
  HitchinBase b = global_hitchin_base(*rd);
  ordered_json j = header("hitchin-base", *rd);
  j["degrees"] = fundamental_degrees(*rd);
  j["bundle_degrees"] = b.bundle_degrees;
  j["dimensions"] = b.dims;
  j["total"] = b.total;
  return j;
}

const std::vector<std::string>& propositions() {
  static const std::vector<std::string> names{"size-of-image", "surjectivity", "n1-corollary",
                                              "residue-diagram", "global-oper",
                                              "invariant-generator"};
  return names;
}

ordered_json verify(const std::string& prop, const RunConfig& cfg) {
  auto rd = datum(cfg.type);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["proposition"] = prop;
  j["type"] = rd->type().name();

  if (prop == "global-oper") {
    OperSpace s = global_oper_space(rd->type());
    HitchinBase b = global_hitchin_base(*rd);
    j["dual_type"] = rd->type().dual().name();
    j["oper_space_dimension"] = s.dimension;
    j["spanned_by_theta"] = s.spanned_by_theta;
    j["hitchin_base_dimension"] = b.total;
    j["status"] = status(s.dimension == 1 && s.spanned_by_theta && b.total == 1);
    return j;
  }

  const InvariantSystem inv(rd);
  Parahoric p(rd, resolve_kac(*rd, cfg.kac));
  j["parahoric"] = p.kac_coords();
  j["m"] = p.m();

  if (prop == "size-of-image") {
    ContainmentReport r = verify_containment(inv, p, cfg.n, cfg.samples, cfg.seed, cfg.jobs);
    j["n"] = cfg.n;
    j["samples"] = r.samples;
    j["seed"] = cfg.seed;
    j["bounds"] = bounds(r.bounds);
    j["max_orders"] = orders(r.max_orders);
    if (r.violation_index) {
      j["violation_index"] = *r.violation_index;
      j["violation_element"] = r.violation_element;
    }
    j["status"] = status(r.pass);
  } else if (prop == "surjectivity") {
    SurjectivityReport r = verify_surjectivity(inv, p, cfg.samples, cfg.seed, cfg.n);
    j["n"] = cfg.n;
    j["samples"] = r.trials;
    j["seed"] = cfg.seed;
    j["bounds"] = bounds(r.bounds);
    j["attained"] = r.attained;
    if (!r.failure.empty()) j["failure"] = r.failure;
    j["status"] = status(r.pass);
  } else if (prop == "n1-corollary") {
    CorollaryReport r = verify_n1_corollary(inv, p, cfg.samples, cfg.seed);
    j["n"] = 1;
    j["samples"] = r.samples;
    j["seed"] = cfg.seed;
    j["bounds"] = bounds(r.bounds);
    j["attained"] = r.attained;
    j["status"] = status(r.pass);
  } else if (prop == "residue-diagram") {
    ResidueReport r = residue_diagram(inv, p, cfg.samples, cfg.seed);
    j["samples"] = r.samples;
    j["seed"] = cfg.seed;
    j["scalar"] = to_string(r.scalar);
    if (!r.failure.empty()) j["failure"] = r.failure;
    j["status"] = status(r.pass);
  } else if (prop == "invariant-generator") {
    TorusInvariant t = torus_invariant_generator(p);
    j["exponents"] = t.exponents;
    j["degree"] = t.degree;
    j["kac_labels"] = rd->kac_labels();
    j["lattice_check"] = t.lattice_check;
    j["status"] = status(t.exponents == rd->kac_labels() && t.lattice_check);
  } else {
    throw PreconditionError("unknown proposition: " + prop);
  }
  return j;
}

std::string as_table(const ordered_json& j) {
  std::ostringstream os;
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << ": ";
    if (it->is_string())
      os << it->get<std::string>();
    else
      os << it->dump();
    os << "\n";
  }
  return os.str();
}

}  // namespace loopalg::report
