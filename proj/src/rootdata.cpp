#include "loopalg/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "loopalg/charpoly.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/polynomial.hpp"

namespace loopalg {

namespace {

using QMatrix = Matrix<Rational>;

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

QMatrix unit(int n, int i, int j, const Rational& c = 1) {
  QMatrix m(n, n);
  m(i, j) = c;
  return m;
}

bool supported(Family f, int r) {
  switch (f) {
    case Family::A: return r >= 1 && r <= 8;
    case Family::B: return r >= 2 && r <= 8;
    case Family::C: return r >= 2 && r <= 8;
    case Family::D: return r >= 4 && r <= 8;
    case Family::G: return r == 2;
    default: return false;
  }
}

char family_letter(Family f) { return "ABCDEFG"[int(f)]; }

std::vector<std::vector<int>> make_cartan(const CartanType& t) {
  const int l = t.rank;
  std::vector<std::vector<int>> a(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      a[l - 1][l - 2] = -2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      a[l - 2][l - 1] = -2;
      break;
    case Family::D:
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1);
      link(l - 3, l - 1);
      break;
    case Family::G:
      a[0][1] = -1;
      a[1][0] = -3;
      if (t.transposed) std::swap(a[0][1], a[1][0]);
      break;
    default:
      break;
  }
  return a;
}

// Raising operators of the simple roots in the defining representation.
std::vector<QMatrix> simple_raising(const CartanType& t, int& n) {
  const int l = t.rank;
  std::vector<QMatrix> e;
  auto chain = [&](int count) {
    for (int i = 0; i < count; ++i)
      e.push_back(unit(n, i, i + 1) - unit(n, n - 2 - i, n - 1 - i));
  };
  switch (t.family) {
    case Family::A:
      n = l + 1;
      for (int i = 0; i < l; ++i) e.push_back(unit(n, i, i + 1));
      break;
    case Family::B:
      n = 2 * l + 1;
      chain(l - 1);
      e.push_back(unit(n, l - 1, l) - unit(n, l, l + 1));
      break;
    case Family::C:
      n = 2 * l;
      chain(l - 1);
      e.push_back(unit(n, l - 1, l));
      break;
    case Family::D:
      n = 2 * l;
      chain(l - 1);
      e.push_back(unit(n, l - 2, l) - unit(n, l - 1, l + 1));
      break;
    default:
      break;
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------- CartanType

std::string CartanType::name() const {
  std::string s(1, family_letter(family));
  s += std::to_string(rank);
  if (transposed) s += "t";
  return s;
}

CartanType CartanType::parse(std::string_view text) {
  std::string s;
  for (char ch : text) s += char(std::toupper(static_cast<unsigned char>(ch)));
  if (s.size() < 2) throw UnsupportedType("unrecognized type '" + std::string(text) + "'");
  CartanType t;
  auto pos = std::string("ABCDEFG").find(s[0]);
  if (pos == std::string::npos)
    throw UnsupportedType("unrecognized type '" + std::string(text) + "'");
  t.family = Family(pos);
  std::string digits = s.substr(1);
  if (!digits.empty() && digits.back() == 'T') {
    t.transposed = true;
    digits.pop_back();
  }
  if (digits.empty() || digits.size() > 2 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw UnsupportedType("unrecognized type '" + std::string(text) + "'");
  t.rank = std::stoi(digits);
  if (t.transposed && t.family != Family::G)
    throw UnsupportedType("only G2 has a transposed form");
  return t;
}

CartanType CartanType::dual() const {
  CartanType d = *this;
  if (family == Family::B) d.family = Family::C;
  if (family == Family::C) d.family = Family::B;
  if (family == Family::G) d.transposed = !transposed;
  return d;
}

bool CartanType::has_invariant_support() const {
  return (family == Family::A && rank <= 4) || (family == Family::C && rank == 2) ||
         (family == Family::G && rank == 2);
}

// ---------------------------------------------------------------- RootDatum

RootDatum::RootDatum(const CartanType& type) : type_(type), rank_(type.rank) {
  if (!supported(type.family, type.rank))
    throw UnsupportedType("type " + type.name() + " is not supported");
  cartan_ = make_cartan(type);
  build_roots();
  build_representation();
  build_table();
  build_labels();
}

void RootDatum::build_roots() {
  const int l = rank_;
  std::set<Root> known;
  std::vector<Root> level;
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    level.push_back(r);
    known.insert(r);
  }
  std::vector<Root> all = level;
  while (!level.empty()) {
    std::set<Root> next;
    for (const auto& beta : level) {
      for (int i = 0; i < l; ++i) {
        int p = 0;
        Root down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (int j = 0; j < l; ++j) pairing += cartan_[i][j] * beta[j];
        if (p - pairing > 0) {
          Root up = beta;
          up[i] += 1;
          next.insert(up);
        }
      }
    }
    level.assign(next.begin(), next.end());
    for (const auto& r : level) known.insert(r);
    all.insert(all.end(), level.begin(), level.end());
  }
  auto ht = [](const Root& r) {
    int s = 0;
    for (int x : r) s += x;
    return s;
  };
  std::sort(all.begin(), all.end(), [&](const Root& a, const Root& b) {
    if (ht(a) != ht(b)) return ht(a) < ht(b);
    return a > b;
  });
  positive_ = all;
  roots_ = positive_;
  for (const auto& r : positive_) {
    Root neg = r;
    for (auto& x : neg) x = -x;
    roots_.push_back(neg);
  }
  lines_.assign(l, Root(l, 0));
  lines_.insert(lines_.end(), roots_.begin(), roots_.end());
}

int RootDatum::height(int line) const {
  int s = 0;
  for (int x : lines_[line]) s += x;
  return s;
}

int RootDatum::line_of(const Root& root) const {
  auto it = std::find(roots_.begin(), roots_.end(), root);
  if (it == roots_.end()) return -1;
  return rank_ + int(it - roots_.begin());
}

std::string RootDatum::line_name(int line) const {
  if (is_cartan(line)) return "h" + std::to_string(line + 1);
  std::ostringstream os;
  const Root& r = lines_[line];
  bool negative = height(line) < 0;
  os << (negative ? "f[" : "e[");
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << (negative ? -r[i] : r[i]);
  os << "]";
  return os.str();
}

Rational RootDatum::root_value(const Element& c, const Root& alpha) const {
  Rational out = 0;
  for (int i = 0; i < rank_; ++i) {
    if (loopalg::is_zero(c[i])) continue;
    int pairing = 0;
    for (int j = 0; j < rank_; ++j) pairing += cartan_[i][j] * alpha[j];
    out += c[i] * pairing;
  }
  return out;
}

void RootDatum::build_representation() {
  const int l = rank_;
  std::vector<QMatrix> e, f;
  int n = 0;
  if (type_.family == Family::G) {
    n = 7;
    QMatrix e1 = unit(n, 0, 1) - unit(n, 5, 6);
    QMatrix e2 = unit(n, 1, 3) - unit(n, 3, 5) + unit(n, 4, 0) - unit(n, 6, 2);
    QMatrix f1 = unit(n, 1, 0) - unit(n, 6, 5);
    QMatrix f2 = unit(n, 3, 1, 2) - unit(n, 5, 3, 2) + unit(n, 0, 4) - unit(n, 2, 6);
    e = {e1, e2};
    f = {f1, f2};
    if (type_.transposed) {
      std::swap(e[0], e[1]);
      std::swap(f[0], f[1]);
    }
  } else {
    e = simple_raising(type_, n);
    for (const auto& ei : e) {
      QMatrix et = ei.transposed();
      QMatrix probe = commutator(commutator(ei, et), ei);
      // [[E, E^T], E] = lambda E
      Rational lambda = 0;
      for (int i = 0; i < n && loopalg::is_zero(lambda); ++i)
        for (int j = 0; j < n; ++j)
          if (!loopalg::is_zero(ei(i, j))) {
            lambda = probe(i, j) / ei(i, j);
            break;
          }
      f.push_back(et.scaled(Rational(2) / lambda));
    }
  }
  rep_dim_ = n;

  std::vector<QMatrix> h;
  for (int i = 0; i < l; ++i) h.push_back(commutator(e[i], f[i]));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      if (!(commutator(h[i], e[j]) == e[j].scaled(cartan_[i][j])) ||
          !(commutator(h[i], f[j]) == f[j].scaled(-cartan_[i][j])) ||
          (i != j && !commutator(e[i], f[j]).is_zero()))
        throw PreconditionError("defining representation of " + type_.name() +
                                " violates the Serre relations");
    }

  const int np = int(positive_.size());
  std::vector<QMatrix> ep(np), fp(np);
  for (int k = 0; k < np; ++k) {
    const Root& a = positive_[k];
    int ht = 0;
    for (int x : a) ht += x;
    if (ht == 1) {
      int i = int(std::find(a.begin(), a.end(), 1) - a.begin());
      ep[k] = e[i];
      fp[k] = f[i];
      continue;
    }
    for (int i = 0; i < l; ++i) {
      Root b = a;
      b[i] -= 1;
      auto it = std::find(positive_.begin(), positive_.end(), b);
      if (it == positive_.end()) continue;
      int p = 0;
      Root down = b;
      while (true) {
        down[i] -= 1;
        if (std::find(positive_.begin(), positive_.end(), down) == positive_.end()) break;
        ++p;
      }
      int kb = int(it - positive_.begin());
      Rational inv(1, p + 1);
      ep[k] = commutator(e[i], ep[kb]).scaled(inv);
      fp[k] = commutator(fp[kb], f[i]).scaled(inv);
      break;
    }
  }

  rep_ = h;
  rep_.insert(rep_.end(), ep.begin(), ep.end());
  rep_.insert(rep_.end(), fp.begin(), fp.end());

  // Decomposition. The standard basis of the representation consists of
  // weight vectors, so root vectors have pairwise disjoint off-diagonal
  // supports and Cartan elements are diagonal.
  const int N = dim();
  pivots_.assign(N, {-1, -1});
  for (int a = rank_; a < N; ++a)
    for (int i = 0; i < n && pivots_[a].first < 0; ++i)
      for (int j = 0; j < n; ++j)
        if (!loopalg::is_zero(rep_[a](i, j))) {
          pivots_[a] = {i, j};
          break;
        }
  QMatrix diag(l, n);
  for (int a = 0; a < l; ++a)
    for (int i = 0; i < n; ++i) diag(a, i) = rep_[a](i, i);
  QMatrix reduced = diag;
  auto piv = rref(reduced);
  if (int(piv.size()) != l)
    throw PreconditionError("Cartan matrices of " + type_.name() + " are dependent");
  QMatrix square(l, l);
  for (int k = 0; k < l; ++k) {
    pivots_[k] = {piv[k], piv[k]};
    for (int a = 0; a < l; ++a) square(k, a) = diag(a, piv[k]);
  }
  pivot_inverse_ = *inverse(square);

  coroots_.clear();
  for (int k = 0; k < np; ++k) {
    Element c = decompose(commutator(ep[k], fp[k]));
    for (int a = rank_; a < N; ++a)
      if (!loopalg::is_zero(c[a]))
        throw PreconditionError("[e_a, f_a] is not in the Cartan subalgebra");
    c.resize(rank_);
    coroots_.push_back(c);
  }

  gram_ = QMatrix(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      // Nonzero only between opposite weights.
      bool opposite = true;
      for (int i = 0; i < l; ++i) opposite = opposite && lines_[a][i] == -lines_[b][i];
      if (!opposite) continue;
      Rational s = trace(rep_[a] * rep_[b]);
      gram_(a, b) = s;
      gram_(b, a) = s;
    }
}

Element RootDatum::decompose(const QMatrix& m) const {
  const int N = dim();
  Element c(N, Rational(0));
  std::vector<Rational> rhs(rank_);
  for (int k = 0; k < rank_; ++k) rhs[k] = m(pivots_[k].first, pivots_[k].second);
  Element hc = pivot_inverse_.apply(rhs);
  for (int k = 0; k < rank_; ++k) c[k] = hc[k];
  for (int a = rank_; a < N; ++a) {
    const auto& [i, j] = pivots_[a];
    if (!loopalg::is_zero(m(i, j))) c[a] = m(i, j) / rep_[a](i, j);
  }
  QMatrix back(rep_dim_, rep_dim_);
  for (int a = 0; a < N; ++a) {
    if (loopalg::is_zero(c[a])) continue;
    const auto& ra = rep_[a];
    for (int i = 0; i < rep_dim_; ++i)
      for (int j = 0; j < rep_dim_; ++j)
        if (!loopalg::is_zero(ra(i, j))) back(i, j) += c[a] * ra(i, j);
  }
  if (!(back == m)) throw PreconditionError("matrix is not in the Lie algebra");
  return c;
}

namespace {

struct Entry {
  int i, j;
  Rational v;
};
using Sparse = std::vector<Entry>;
using SparseMap = std::map<std::pair<int, int>, Rational>;

Sparse to_sparse(const QMatrix& m) {
  Sparse out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!loopalg::is_zero(m(i, j))) out.push_back({i, j, m(i, j)});
  return out;
}

void accumulate_product(const Sparse& a, const Sparse& b, int sign, SparseMap& out) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.j == y.i) out[{x.i, y.j}] += sign * x.v * y.v;
}

}  // namespace

void RootDatum::build_table() {
  const int N = dim();
  table_.assign(std::size_t(N) * N, {});
  std::vector<Sparse> sparse;
  for (int a = 0; a < N; ++a) sparse.push_back(to_sparse(rep_[a]));
  std::map<std::pair<int, int>, int> pivot_line;
  for (int a = rank_; a < N; ++a) pivot_line[pivots_[a]] = a;

  std::set<Root> weights(roots_.begin(), roots_.end());
  weights.insert(Root(rank_, 0));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      // The bracket has weight root(a) + root(b); skip non-weights.
      Root w = lines_[a];
      for (int i = 0; i < rank_; ++i) w[i] += lines_[b][i];
      if (!weights.count(w)) continue;
      if (is_cartan(a) && is_cartan(b)) continue;
      SparseMap m;
      accumulate_product(sparse[a], sparse[b], 1, m);
      accumulate_product(sparse[b], sparse[a], -1, m);
      for (auto it = m.begin(); it != m.end();)
        it = loopalg::is_zero(it->second) ? m.erase(it) : std::next(it);
      if (m.empty()) continue;

      Element c(N, Rational(0));
      std::vector<Rational> rhs(rank_);
      for (int k = 0; k < rank_; ++k) {
        auto it = m.find(pivots_[k]);
        if (it != m.end()) rhs[k] = it->second;
      }
      Element hc = pivot_inverse_.apply(rhs);
      for (int k = 0; k < rank_; ++k) c[k] = hc[k];
      for (const auto& [pos, v] : m) {
        auto it = pivot_line.find(pos);
        if (it != pivot_line.end()) c[it->second] = v / rep_[it->second](pos.first, pos.second);
      }
      SparseMap back;
      for (int k = 0; k < N; ++k) {
        if (loopalg::is_zero(c[k])) continue;
        for (const auto& e : sparse[k]) back[{e.i, e.j}] += c[k] * e.v;
      }
      for (auto it = back.begin(); it != back.end();)
        it = loopalg::is_zero(it->second) ? back.erase(it) : std::next(it);
      if (back != m) throw PreconditionError("bracket left the Lie algebra");
      auto& slot = table_[std::size_t(a) * N + b];
      for (int k = 0; k < N; ++k)
        if (!loopalg::is_zero(c[k])) slot.emplace_back(k, c[k]);
    }
}

void RootDatum::build_labels() {
  const Root& theta = highest_root();
  labels_ = {1};
  labels_.insert(labels_.end(), theta.begin(), theta.end());
  coxeter_ = 0;
  for (int a : labels_) coxeter_ += a;

  // Consistency: the labels are a null vector of the affine Cartan matrix.
  const int l = rank_;
  const Element& theta_vee = coroots_.back();
  std::vector<Rational> row0(l + 1);
  row0[0] = 2;
  for (int j = 0; j < l; ++j) {
    Root aj(l, 0);
    aj[j] = 1;
    row0[j + 1] = -root_value(theta_vee, aj);
  }
  Rational s0 = 0;
  for (int j = 0; j <= l; ++j) s0 += row0[j] * labels_[j];
  bool ok = loopalg::is_zero(s0);
  for (int i = 0; i < l; ++i) {
    int s = 0;
    for (int j = 0; j < l; ++j) s -= cartan_[i][j] * theta[j];
    for (int j = 0; j < l; ++j) s += cartan_[i][j] * labels_[j + 1];
    ok = ok && s == 0;
  }
  if (!ok) throw PreconditionError("Kac labels are not a null vector");
}

Rational RootDatum::structure_constant(const Root& alpha, const Root& beta) const {
  int a = line_of(alpha), b = line_of(beta);
  if (a < 0 || b < 0) throw PreconditionError("structure constant of a non-root");
  Root sum = alpha;
  for (int i = 0; i < rank_; ++i) sum[i] += beta[i];
  int c = line_of(sum);
  if (c < 0) return 0;
  for (const auto& [k, v] : bracket_lines(a, b))
    if (k == c) return v;
  return 0;
}

QMatrix RootDatum::ad(const Element& x) const {
  const int N = dim();
  QMatrix m(N, N);
  for (int a = 0; a < N; ++a) {
    if (loopalg::is_zero(x[a])) continue;
    for (int b = 0; b < N; ++b)
      for (const auto& [c, v] : bracket_lines(a, b)) m(c, b) += x[a] * v;
  }
  return m;
}

Element RootDatum::basis_vector(int line) const {
  Element v(dim(), Rational(0));
  v[line] = 1;
  return v;
}

std::shared_ptr<const RootDatum> build_root_datum(const CartanType& type) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const RootDatum>> cache;
  const std::string key = type.name();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rd = std::make_shared<const RootDatum>(type);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rd).first->second;
}

// ---------------------------------------------------------------- triples

PrincipalTriple principal_triple(const RootDatum& rd) {
  std::vector<Root> base;
  for (int i = 0; i < rd.rank(); ++i) base.push_back(rd.root_of(rd.simple_line(i)));
  return principal_triple(rd, base);
}

PrincipalTriple principal_triple(const RootDatum& rd, const std::vector<Root>& base) {
  const int l = rd.rank(), N = rd.dim();
  PrincipalTriple t;
  t.base = base;
  t.f.assign(N, 0);
  for (const auto& beta : base) {
    Root neg = beta;
    for (auto& x : neg) x = -x;
    int line = rd.line_of(neg);
    if (line < 0) throw PreconditionError("base element is not a root");
    t.f[line] += 1;
  }

  // h: beta_j(h) = 2.
  QMatrix hm(l, l);
  for (int j = 0; j < l; ++j)
    for (int i = 0; i < l; ++i) {
      Element unit_i(l, 0);
      unit_i[i] = 1;
      hm(j, i) = rd.root_value(unit_i, base[j]);
    }
  auto hc = solve(hm, std::vector<Rational>(l, Rational(2)));
  if (!hc) throw PreconditionError("base is not linearly independent");
  t.h.assign(N, 0);
  for (int i = 0; i < l; ++i) t.h[i] = (*hc)[i];

  // e = sum x_j e_{beta_j} with [e, f] = h.
  QMatrix sys(N, l);
  std::vector<int> lines;
  for (int j = 0; j < l; ++j) {
    int line = rd.line_of(base[j]);
    lines.push_back(line);
    Element col = rd.bracket(rd.basis_vector(line), t.f);
    for (int a = 0; a < N; ++a) sys(a, j) = col[a];
  }
  auto x = solve(sys, t.h);
  if (!x) throw PreconditionError("no e with [e, f] = h for this base");
  t.e.assign(N, 0);
  for (int j = 0; j < l; ++j) t.e[lines[j]] = (*x)[j];

  auto scaled = [](Element v, int s) {
    for (auto& c : v) c *= s;
    return v;
  };
  if (rd.bracket(t.h, t.e) != scaled(t.e, 2) || rd.bracket(t.h, t.f) != scaled(t.f, -2) ||
      rd.bracket(t.e, t.f) != t.h)
    throw PreconditionError("principal triple relations fail");
  return t;
}

std::vector<int> fundamental_degrees(const RootDatum& rd) {
  PrincipalTriple t = principal_triple(rd);
  QMatrix ade = rd.ad(t.e);
  std::vector<int> degrees;
  for (int k = 0; k < rd.coxeter_number(); ++k) {
    std::vector<int> cols;
    for (int line = 0; line < rd.dim(); ++line)
      if (rd.height(line) == k) cols.push_back(line);
    if (cols.empty()) continue;
    QMatrix restricted(rd.dim(), int(cols.size()));
    for (int a = 0; a < rd.dim(); ++a)
      for (std::size_t c = 0; c < cols.size(); ++c) restricted(a, int(c)) = ade(a, cols[c]);
    int kernel = int(cols.size()) - rank(restricted);
    for (int i = 0; i < kernel; ++i) degrees.push_back(k + 1);
  }
  return degrees;
}

std::vector<Rational> characteristic_polynomial(const QMatrix& m) {
  const int n = m.rows();
  std::vector<Rational> c = charpoly_coeffs(m, n);
  std::vector<Rational> low_first(n + 1);
  for (int k = 0; k <= n; ++k) low_first[n - k] = c[k];
  return low_first;
}

bool is_regular_semisimple(const RootDatum& rd, const Element& x) {
  QMatrix adx = rd.ad(x);
  if (rd.dim() - rank(adx) != rd.rank()) return false;
  UPoly p(characteristic_polynomial(adx));
  return squarefree_part(p).eval(adx).is_zero();
}

}  // namespace loopalg
