#include "loopalg/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace loopalg {

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(const Rational& c) {
  if (!loopalg::is_zero(c)) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && loopalg::is_zero(c_.back())) c_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k >= int(c_.size())) return 0;
  return c_[k];
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) { return *this += -o; }

UPoly& UPoly::operator*=(const UPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  c_ = std::move(out);
  trim();
  return *this;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  UPoly q, r = *this;
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    Rational factor = r.leading() / d.leading();
    UPoly term = monomial(shift, factor);
    q += term;
    r -= term * d;
  }
  return {q, r};
}

UPoly UPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * Rational(long(i)));
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly out = *this;
  Rational inv = 1 / leading();
  for (auto& x : out.c_) x *= inv;
  return out;
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Matrix<Rational> UPoly::eval(const Matrix<Rational>& m) const {
  const int n = m.rows();
  Matrix<Rational> acc(n, n);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * m;
    for (int i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

std::string UPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (loopalg::is_zero(c_[k])) continue;
    if (!first) os << " + ";
    first = false;
    os << to_string(c_[k]);
    if (k > 0) os << "*" << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return p.divmod(gcd(p, p.derivative())).first.monic();
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(const Rational& c) {
  if (!loopalg::is_zero(c)) terms_[{}] = c;
}

MPoly::Monomial MPoly::normalize(Monomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

MPoly MPoly::variable(int index, int nvars) {
  (void)nvars;
  Monomial m(index + 1, 0);
  m[index] = 1;
  MPoly out;
  out.terms_[m] = 1;
  return out;
}

bool MPoly::is_weighted_homogeneous(const std::vector<int>& w, int degree) const {
  for (const auto& [mono, c] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) d += mono[i] * w[i];
    if (d != degree) return false;
  }
  return true;
}

Rational MPoly::coeff(const Monomial& mono) const {
  auto it = terms_.find(normalize(mono));
  return it == terms_.end() ? Rational(0) : it->second;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto& slot = terms_[m];
    slot += c;
    if (loopalg::is_zero(slot)) terms_.erase(m);
  }
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly& MPoly::operator*=(const MPoly& o) {
  std::map<Monomial, Rational> out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out[m] += ca * cb;
    }
  terms_.clear();
  for (auto& [m, c] : out)
    if (!loopalg::is_zero(c)) terms_.emplace(m, c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
  if (loopalg::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      os << "*y" << (i + 1);
      if (mono[i] > 1) os << "^" << mono[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(UPoly num, UPoly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = UPoly();
    den_ = UPoly(1);
    return;
  }
  UPoly g = gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  Rational lead = den.leading();
  num_ = num * UPoly(1 / lead);
  den_ = den * UPoly(1 / lead);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFunc::str(const std::string& var) const {
  if (den_ == UPoly(1)) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace loopalg
