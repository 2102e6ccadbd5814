#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "f4diag/exactla.hpp"
#include "f4diag/rational.hpp"

namespace f4 {

// (alpha exponent, delta exponent)
using Monomial = std::pair<int, int>;

// Graded order with delta > alpha, largest first, so begin() is the leading term.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da > db;
    return a.second > b.second;
  }
};

class Poly2 {
 public:
  using Terms = std::map<Monomial, Rational, GrlexDesc>;

  Poly2() = default;
  Poly2(const Rational& c) { if (!c.is_zero()) terms_.emplace(Monomial{0, 0}, c); }
  Poly2(int c) : Poly2(Rational(c)) {}
  static Poly2 monomial(const Rational& c, int alpha_exp, int delta_exp);
  static Poly2 alpha() { return monomial(1, 1, 0); }
  static Poly2 delta() { return monomial(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }
  int degree_alpha() const;
  int degree_delta() const;
  Rational eval(const Rational& alpha, const Rational& delta) const;

  Poly2& operator+=(const Poly2& b);
  Poly2& operator-=(const Poly2& b);
  Poly2& operator*=(const Poly2& b);
  Poly2& operator*=(const Rational& c);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, const Poly2& b) { return a *= b; }
  Poly2 operator-() const;
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  // "c*a^i*d^j" terms, largest first; "0" for the zero polynomial.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

// Quotient and gcd helpers over Q[alpha, delta].
Poly2 poly_gcd(const Poly2& a, const Poly2& b);
// Exact division; throws std::domain_error if b does not divide a.
Poly2 poly_divexact(const Poly2& a, const Poly2& b);

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// Element of Q(alpha, delta), always in normal form: coprime numerator and
// denominator, denominator with integer coprime coefficients and positive
// leading coefficient.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(const Poly2& p) : num_(p), den_(1) {}
  RatFunc(const Poly2& num, const Poly2& den);
  static RatFunc alpha() { return RatFunc(Poly2::alpha()); }
  static RatFunc delta() { return RatFunc(Poly2::delta()); }

  // Infix expression over a, d (or alpha, delta), integers, + - * / ^ and
  // parentheses. Also reads back everything str() produces.
  static RatFunc parse(std::string_view text);

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Only valid when is_constant().
  Rational constant() const;

  // Throws PoleError naming the vanishing factor.
  Rational specialize(const Rational& alpha, const Rational& delta) const;

  RatFunc& operator+=(const RatFunc& b);
  RatFunc& operator-=(const RatFunc& b);
  RatFunc& operator*=(const RatFunc& b);
  RatFunc& operator/=(const RatFunc& b);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // "(<num>)/(<den>)"
  std::string str() const;

 private:
  void normalize();
  Poly2 num_;
  Poly2 den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

inline std::size_t pivot_cost(const RatFunc& f) { return f.num().terms().size() + f.den().terms().size(); }

using RfMatrix = DenseMatrix<RatFunc>;
using RfVector = DenseVector<RatFunc>;

// Unique solution of a square nonsingular system; throws std::domain_error if singular.
RfVector rf_solve(const RfMatrix& system, const RfVector& rhs);

}  // namespace f4

namespace Eigen {
template <>
struct NumTraits<f4::RatFunc> : GenericNumTraits<f4::RatFunc> {
  using Real = f4::RatFunc;
  using NonInteger = f4::RatFunc;
  using Literal = f4::RatFunc;
  using Nested = f4::RatFunc;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
