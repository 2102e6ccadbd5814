#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

namespace f4 {

// Exact rational number, always in lowest terms with a positive denominator.
// Values whose numerator and denominator fit in 63 bits stay in a pair of
// machine words; anything larger moves to an mpq_class and moves back as soon
// as it fits again, so the representation of a value is unique.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(long v) : num_(v) { if (v == INT64_MIN) set_big(mpq_class(mpz_class(v))); }
  Rational(long long v) : Rational(static_cast<long>(v)) {}
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q) { set_big(q); }
  explicit Rational(const mpz_class& z) { set_big(mpq_class(z)); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return !big_; }
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  // Bits in numerator plus bits in denominator; used as a pivot cost.
  std::size_t bit_size() const;
  double to_double() const;
  std::string str() const;

  Rational inverse() const;

  Rational& operator+=(const Rational& b);
  Rational& operator-=(const Rational& b);
  Rational& operator*=(const Rational& b);
  Rational& operator/=(const Rational& b);

  // this += a * b, the inner step of every contraction.
  void add_product(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;
  Rational operator+() const { return *this; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void set_big(const mpq_class& q);
  void set_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& conj(const Rational& r) { return r; }
inline const Rational& real(const Rational& r) { return r; }
inline Rational imag(const Rational&) { return 0; }
inline Rational abs2(const Rational& r) { return r * r; }

inline std::size_t pivot_cost(const Rational& r) { return r.bit_size(); }

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace f4

namespace Eigen {
template <>
struct NumTraits<f4::Rational> : GenericNumTraits<f4::Rational> {
  using Real = f4::Rational;
  using NonInteger = f4::Rational;
  using Literal = f4::Rational;
  using Nested = f4::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
