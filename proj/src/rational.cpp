#include "f4diag/rational.hpp"

#include <bit>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace f4 {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr i128 kMax = INT64_MAX;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0)
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  u128 u = uabs(v);
  mpz_class z(static_cast<unsigned long>(u >> 64));
  z <<= 64;
  z += static_cast<unsigned long>(u & ~std::uint64_t{0});
  return v < 0 ? mpz_class(-z) : z;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  set_wide(num, den);
}

void Rational::set_big(const mpq_class& q) {
  const mpz_srcptr n = q.get_num_mpz_t();
  const mpz_srcptr d = q.get_den_mpz_t();
  if (mpz_fits_slong_p(n) && mpz_fits_slong_p(d)) {
    long nv = mpz_get_si(n);
    if (nv != INT64_MIN) {
      num_ = nv;
      den_ = mpz_get_si(d);
      big_.reset();
      return;
    }
  }
  if (big_)
    *big_ = q;
  else
    big_ = std::make_unique<mpq_class>(q);
  num_ = 0;
  den_ = 1;
}

// Stores n/d, reducing first; d must be nonzero.
void Rational::set_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g != 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n <= kMax && n >= -kMax && d <= kMax) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  set_big(q);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = trim(text.substr(0, slash));
    den = trim(text.substr(slash + 1));
    if (!all_digits(den)) throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(den.empty() ? std::string("1") : std::string(den), 10);
  if (d == 0) throw std::invalid_argument("bad rational: zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }

mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

std::size_t Rational::bit_size() const {
  if (big_)
    return mpz_sizeinbase(big_->get_num_mpz_t(), 2) + mpz_sizeinbase(big_->get_den_mpz_t(), 2);
  auto n = static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_);
  return std::bit_width(n) + std::bit_width(static_cast<std::uint64_t>(den_));
}

double Rational::to_double() const {
  return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: division by zero");
  if (big_) return Rational(mpq_class(1) / *big_);
  Rational r;
  r.set_wide(den_, num_);
  return r;
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& b) {
  if (!big_ && !b.big_) {
    if (den_ == 1 && b.den_ == 1) {
      set_wide(static_cast<i128>(num_) + b.num_, 1);
    } else if (den_ == b.den_) {
      set_wide(static_cast<i128>(num_) + b.num_, den_);
    } else {
      set_wide(static_cast<i128>(num_) * b.den_ + static_cast<i128>(b.num_) * den_,
               static_cast<i128>(den_) * b.den_);
    }
    return *this;
  }
  set_big(to_mpq() + b.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& b) {
  if (!big_ && !b.big_) {
    if (den_ == b.den_) {
      set_wide(static_cast<i128>(num_) - b.num_, den_);
    } else {
      set_wide(static_cast<i128>(num_) * b.den_ - static_cast<i128>(b.num_) * den_,
               static_cast<i128>(den_) * b.den_);
    }
    return *this;
  }
  set_big(to_mpq() - b.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& b) {
  if (!big_ && !b.big_) {
    if (num_ == 0 || b.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // cross-cancel first so the product is already reduced
    auto g1 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_),
                                                 static_cast<std::uint64_t>(b.den_)));
    auto g2 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(b.num_ < 0 ? -b.num_ : b.num_),
                                                 static_cast<std::uint64_t>(den_)));
    i128 n = static_cast<i128>(num_ / g1) * (b.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (b.den_ / g1);
    if (n <= kMax && n >= -kMax && d <= kMax) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return *this;
  }
  set_big(to_mpq() * b.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& b) { return *this *= b.inverse(); }

void Rational::add_product(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  Rational p = a;
  p *= b;
  *this += p;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical storage: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace f4
