#include "f4diag/ratfield.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <vector>

namespace f4 {

// ---- Poly2 ---------------------------------------------------------------

Poly2 Poly2::monomial(const Rational& c, int alpha_exp, int delta_exp) {
  Poly2 p;
  if (!c.is_zero()) p.terms_.emplace(Monomial{alpha_exp, delta_exp}, c);
  return p;
}

void Poly2::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Poly2::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

Rational Poly2::constant_term() const {
  auto it = terms_.find(Monomial{0, 0});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly2::degree_alpha() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first);
  return d;
}

int Poly2::degree_delta() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.second);
  return d;
}

Rational Poly2::eval(const Rational& alpha, const Rational& delta) const {
  Rational sum;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < m.first; ++k) t *= alpha;
    for (int k = 0; k < m.second; ++k) t *= delta;
    sum += t;
  }
  return sum;
}

Poly2& Poly2::operator+=(const Poly2& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, -c);
  return *this;
}

Poly2& Poly2::operator*=(const Poly2& b) {
  Poly2 out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
  *this = std::move(out);
  return *this;
}

Poly2& Poly2::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly2 Poly2::operator-() const {
  Poly2 p = *this;
  for (auto& [m, v] : p.terms_) v = -v;
  return p;
}

std::string Poly2::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c;
    if (first) {
      first = false;
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      mag = abs(c);
    }
    out += mag.str();
    if (m.first > 0) out += "*a^" + std::to_string(m.first);
    if (m.second > 0) out += "*d^" + std::to_string(m.second);
  }
  return out;
}

// ---- univariate helpers: Q[alpha] and Q[alpha][delta] --------------------

namespace {

using UPoly = std::vector<Rational>;  // coefficient k multiplies alpha^k
using DPoly = std::vector<UPoly>;     // coefficient k multiplies delta^k

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
void trim(DPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

UPoly u_add(const UPoly& a, const UPoly& b, const Rational& sb = 1) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i].add_product(sb, b[i]);
  trim(r);
  return r;
}

UPoly u_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j].add_product(a[i], b[j]);
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> u_divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  const Rational inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() * inv;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift].add_product(-f, b[i]);
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly u_monic(UPoly p) {
  if (p.empty()) return p;
  const Rational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

UPoly u_gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = u_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return u_monic(a);
}

UPoly u_divexact(const UPoly& a, const UPoly& b) {
  auto [q, r] = u_divmod(a, b);
  if (!r.empty()) throw std::domain_error("inexact polynomial division");
  return q;
}

DPoly to_dpoly(const Poly2& p) {
  DPoly d;
  for (const auto& [m, c] : p.terms()) {
    const auto j = static_cast<std::size_t>(m.second), i = static_cast<std::size_t>(m.first);
    if (d.size() <= j) d.resize(j + 1);
    if (d[j].size() <= i) d[j].resize(i + 1);
    d[j][i] = c;
  }
  return d;
}

Poly2 from_dpoly(const DPoly& d) {
  Poly2 p;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < d[j].size(); ++i)
      p += Poly2::monomial(d[j][i], static_cast<int>(i), static_cast<int>(j));
  return p;
}

UPoly content(const DPoly& p) {
  UPoly g;
  for (const auto& c : p) g = u_gcd(g, c);
  return g;
}

DPoly div_content(const DPoly& p, const UPoly& c) {
  DPoly r;
  for (const auto& k : p) r.push_back(k.empty() ? UPoly{} : u_divexact(k, c));
  return r;
}

DPoly primitive(const DPoly& p) {
  if (p.empty()) return p;
  return div_content(p, content(p));
}

// Pseudo-remainder in delta with coefficients in Q[alpha].
DPoly prem(DPoly a, const DPoly& b) {
  const UPoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const UPoly la = a.back();
    for (auto& c : a) c = u_mul(c, lb);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = u_add(a[i + shift], u_mul(la, b[i]), -1);
    trim(a);
  }
  return a;
}

}  // namespace

Poly2 poly_gcd(const Poly2& pa, const Poly2& pb) {
  DPoly a = to_dpoly(pa), b = to_dpoly(pb);
  if (a.empty()) return from_dpoly(b);
  if (b.empty()) return from_dpoly(a);
  const UPoly c = u_gcd(content(a), content(b));
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    DPoly r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? DPoly{} : primitive(r);
    if (b.empty()) break;
  }
  DPoly g;
  if (b.empty())
    g = a;             // last nonzero remainder
  else
    g = DPoly{UPoly{1}};  // b is a nonzero constant in delta: primitive gcd is 1
  for (auto& k : g) k = u_mul(k, c);
  trim(g);
  return from_dpoly(g);
}

Poly2 poly_divexact(const Poly2& pa, const Poly2& pb) {
  DPoly a = to_dpoly(pa);
  const DPoly b = to_dpoly(pb);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  DPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    UPoly f = u_divexact(a.back(), b.back());
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = u_add(a[i + shift], u_mul(f, b[i]), -1);
    q[shift] = std::move(f);
    trim(a);
  }
  if (!a.empty()) throw std::domain_error("inexact polynomial division");
  trim(q);
  return from_dpoly(q);
}

// ---- RatFunc -------------------------------------------------------------

RatFunc::RatFunc(const Poly2& num, const Poly2& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly2(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly2 g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
  }
  // scale so the denominator has coprime integer coefficients, leading one positive
  mpz_class l = 1, g = 0;
  for (const auto& [m, c] : den_.terms()) {
    const mpz_class d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& [m, c] : den_.terms()) {
    const mpz_class n = c.numerator() * (l / c.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  mpq_class s(l, g);
  s.canonicalize();
  if (den_.leading_coeff().sign() < 0) s = -s;
  const Rational sr(s);
  if (!sr.is_one()) {
    num_ *= sr;
    den_ *= sr;
  }
}

Rational RatFunc::constant() const {
  if (!is_constant()) throw std::logic_error("RatFunc is not constant: " + str());
  return num_.constant_term() / den_.constant_term();
}

Rational RatFunc::specialize(const Rational& alpha, const Rational& delta) const {
  const Rational d = den_.eval(alpha, delta);
  if (d.is_zero()) {
    // name the linear factor responsible when there is one
    std::string factor = den_.str();
    Poly2 at_delta, at_alpha;
    for (const auto& [m, c] : den_.terms()) {
      Rational t = c;
      for (int k = 0; k < m.second; ++k) t *= delta;
      at_delta += Poly2::monomial(t, m.first, 0);
      t = c;
      for (int k = 0; k < m.first; ++k) t *= alpha;
      at_alpha += Poly2::monomial(t, 0, m.second);
    }
    if (at_delta.is_zero())
      factor = (Poly2::delta() - Poly2(delta)).str();
    else if (at_alpha.is_zero())
      factor = (Poly2::alpha() - Poly2(alpha)).str();
    throw PoleError("pole at (alpha, delta) = (" + alpha.str() + ", " + delta.str() + "): denominator factor (" +
                    factor + ") vanishes");
  }
  return num_.eval(alpha, delta) / d;
}

RatFunc& RatFunc::operator+=(const RatFunc& b) {
  if (den_ == b.den_) {
    num_ += b.num_;
  } else {
    num_ = num_ * b.den_ + b.num_ * den_;
    den_ *= b.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& b) { return *this += -b; }

RatFunc& RatFunc::operator*=(const RatFunc& b) {
  num_ *= b.num_;
  den_ *= b.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
  num_ *= b.den_;
  den_ *= b.num_;
  normalize();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RatFunc::str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

// ---- expression parser ---------------------------------------------------

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RatFunc run() {
    RatFunc v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ratfunc parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = primary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      RatFunc r(1);
      for (int k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }
  RatFunc primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (id == "a" || id == "alpha") return RatFunc::alpha();
      if (id == "d" || id == "delta") return RatFunc::delta();
      pos_ = start;
      fail("unknown identifier '" + std::string(id) + "'");
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return ExprParser(text).run(); }

RfVector rf_solve(const RfMatrix& system, const RfVector& rhs) {
  const Eigen::Index n = system.rows();
  if (system.cols() != n || rhs.size() != n) throw std::invalid_argument("rf_solve: system must be square");
  RfMatrix aug(n, n + 1);
  aug.leftCols(n) = system;
  aug.col(n) = rhs;
  const auto ech = row_reduce(aug);
  if (static_cast<Eigen::Index>(ech.pivot_cols.size()) < n || ech.pivot_cols[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::domain_error("rf_solve: singular system");
  return ech.rref.col(n);
}

}  // namespace f4
