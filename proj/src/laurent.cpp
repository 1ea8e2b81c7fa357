#include "loopalg/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "loopalg/errors.hpp"

namespace loopalg {

LaurentPoly::LaurentPoly(const Rational& c) {
  if (!loopalg::is_zero(c)) terms_[0] = c;
  normalize();
}

LaurentPoly LaurentPoly::monomial(Exponent k, const Rational& c) {
  LaurentPoly out;
  if (!loopalg::is_zero(c)) out.terms_[k] = c;
  out.normalize();
  return out;
}

LaurentPoly LaurentPoly::exact(const std::map<Exponent, Rational>& terms) {
  LaurentPoly out;
  out.terms_ = terms;
  out.normalize();
  return out;
}

LaurentPoly LaurentPoly::truncated(const std::map<Exponent, Rational>& terms, Exponent lo,
                                   Exponent hi) {
  LaurentPoly out;
  for (const auto& [k, c] : terms) {
    if (k < lo || k > hi)
      throw WindowUnderflow("term t^" + std::to_string(k) + " outside window [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    out.terms_[k] = c;
  }
  out.hi_ = hi;
  out.normalize();
  return out;
}

// The lower end of the window is the first nonzero exponent, or hi+1 when all
// known coefficients vanish, so equal elements have equal windows.
void LaurentPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (loopalg::is_zero(it->second) || it->first > hi_)
      it = terms_.erase(it);
    else
      ++it;
  }
  if (!terms_.empty())
    lo_ = terms_.begin()->first;
  else
    lo_ = is_exact() ? kInfinity : hi_ + 1;
}

Rational LaurentPoly::coeff(Exponent k) const {
  if (k > hi_)
    throw WindowUnderflow("coefficient of t^" + std::to_string(k) +
                          " is not determined (window ends at " + std::to_string(hi_) + ")");
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

Exponent LaurentPoly::valuation() const {
  if (!terms_.empty()) return terms_.begin()->first;
  if (is_exact()) return kInfinity;
  throw WindowUnderflow("valuation exceeds window end " + std::to_string(hi_));
}

LaurentPoly LaurentPoly::truncate(Exponent new_hi) const {
  LaurentPoly out = *this;
  out.hi_ = std::min(hi_, new_hi);
  out.normalize();
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  hi_ = std::min(hi_, o.hi_);
  for (const auto& [k, c] : o.terms_) {
    if (k > hi_) break;
    terms_[k] += c;
  }
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  Exponent hi = std::min(sat_add(lo_, o.hi_), sat_add(o.lo_, hi_));
  std::map<Exponent, Rational> out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      if (ka + kb > hi) break;
      out[ka + kb] += ca * cb;
    }
  terms_ = std::move(out);
  hi_ = hi;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  for (auto& [k, c] : terms_) c *= s;
  normalize();
  return *this;
}

LaurentPoly LaurentPoly::shift(Exponent k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e + k] = c;
  out.hi_ = is_exact() ? kInfinity : hi_ + k;
  out.normalize();
  return out;
}

LaurentPoly LaurentPoly::euler_derivative() const {
  LaurentPoly out = *this;
  for (auto& [k, c] : out.terms_) c *= Rational(long(k));
  out.normalize();
  return out;
}

LaurentPoly LaurentPoly::derivative() const { return euler_derivative().shift(-1); }

LaurentPoly LaurentPoly::invert_variable() const {
  if (!is_exact()) throw WindowUnderflow("t -> 1/t needs an exact Laurent polynomial");
  LaurentPoly out;
  for (const auto& [k, c] : terms_) out.terms_[-k] = c;
  out.normalize();
  return out;
}

std::string LaurentPoly::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    if (k != 0) os << "*" << var;
    if (k != 0 && k != 1) os << "^" << k;
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    first = false;
    os << "O(" << var << "^" << (hi_ + 1) << ")";
  }
  if (first) os << "0";
  return os.str();
}

Rational residue(const LaurentPoly& f) { return f.coeff(0); }

LaurentPoly ramified_pullback(const LaurentPoly& f, int h) {
  if (h <= 0) throw std::invalid_argument("pullback degree must be positive");
  std::map<Exponent, Rational> terms;
  for (const auto& [k, c] : f.terms()) terms[k * h] = c;
  if (f.is_exact()) return LaurentPoly::exact(terms);
  // u^j with hi*h < j < (hi+1)*h is known to vanish.
  Exponent hi = f.hi() * h + h - 1;
  return LaurentPoly::truncated(terms, terms.empty() ? hi + 1 : terms.begin()->first, hi);
}

namespace {

Exponent parse_exponent(const std::string& s) {
  std::size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad exponent '" + s + "'");
  return v;
}

}  // namespace

LaurentPoly parse_laurent(const std::string& text, const std::string& var) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty Laurent polynomial");

  // Split into signed terms; a '-' directly after '^' belongs to an exponent.
  std::vector<std::string> pieces;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    bool boundary = (ch == '+') || (ch == '-' && i > 0 && s[i - 1] != '^' && s[i - 1] != '+' &&
                                    s[i - 1] != '(');
    if (boundary) {
      if (!cur.empty()) pieces.push_back(cur);
      cur = (ch == '-') ? "-" : "";
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) pieces.push_back(cur);

  std::map<Exponent, Rational> terms;
  Exponent hi = kInfinity;
  const std::string big_o = "O(" + var + "^";
  for (const auto& p : pieces) {
    if (p.rfind(big_o, 0) == 0) {
      if (p.back() != ')') throw std::invalid_argument("bad order term '" + p + "'");
      hi = std::min(hi, parse_exponent(p.substr(big_o.size(), p.size() - big_o.size() - 1)) - 1);
      continue;
    }
    Rational c = 1;
    Exponent k = 0;
    std::string rest = p;
    auto var_pos = rest.find(var);
    if (var_pos == std::string::npos) {
      c = parse_rational(rest);
    } else {
      std::string coeff = rest.substr(0, var_pos);
      std::string power = rest.substr(var_pos + var.size());
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      if (coeff.empty() || coeff == "+")
        c = 1;
      else if (coeff == "-")
        c = -1;
      else
        c = parse_rational(coeff);
      if (power.empty())
        k = 1;
      else if (power[0] == '^')
        k = parse_exponent(power.substr(1));
      else
        throw std::invalid_argument("bad term '" + p + "'");
    }
    terms[k] += c;
  }
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first > hi)
      throw WindowUnderflow("term t^" + std::to_string(it->first) + " beyond order term");
    it = loopalg::is_zero(it->second) ? terms.erase(it) : std::next(it);
  }
  if (hi >= kInfinity) return LaurentPoly::exact(terms);
  return LaurentPoly::truncated(terms, terms.empty() ? hi + 1 : terms.begin()->first, hi);
}

TwistedElement ramified_pullback(const TwistedElement& x, int h) {
  TwistedElement out;
  out.form_degree = x.form_degree;
  Rational scale = 1;
  for (int i = 0; i < std::abs(x.form_degree); ++i) scale *= h;
  if (x.form_degree < 0) scale = 1 / scale;
  for (const auto& f : x.value) out.value.push_back(ramified_pullback(f, h) * scale);
  return out;
}

bool operator<=(const OrderBound& x, const OrderBound& y) {
  if (x.b.size() != y.b.size()) return false;
  for (std::size_t i = 0; i < x.b.size(); ++i)
    if (x.b[i] > y.b[i]) return false;
  return true;
}

OrderBound OrderBound::meet(const OrderBound& o) const {
  OrderBound out = *this;
  for (std::size_t i = 0; i < b.size(); ++i) out.b[i] = std::min(b[i], o.b[i]);
  return out;
}

OrderBound OrderBound::join(const OrderBound& o) const {
  OrderBound out = *this;
  for (std::size_t i = 0; i < b.size(); ++i) out.b[i] = std::max(b[i], o.b[i]);
  return out;
}

}  // namespace loopalg
