#pragma once

#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "f4diag/rational.hpp"

namespace f4 {

namespace detail {

// Oriented Fano lines: e_a e_b = e_c for each (a, b, c) and its cyclic shifts.
inline constexpr int kFanoLines[7][3] = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7},
                                         {5, 6, 1}, {6, 7, 2}, {7, 1, 3}};

struct UnitProduct {
  int sign;
  int index;
};

constexpr std::array<std::array<UnitProduct, 8>, 8> make_unit_table() {
  std::array<std::array<UnitProduct, 8>, 8> t{};
  for (int i = 0; i < 8; ++i) {
    t[0][i] = {1, i};
    t[i][0] = {1, i};
  }
  for (int i = 1; i < 8; ++i) t[i][i] = {-1, 0};
  for (const auto& l : kFanoLines) {
    for (int r = 0; r < 3; ++r) {
      const int a = l[r], b = l[(r + 1) % 3], c = l[(r + 2) % 3];
      t[a][b] = {1, c};
      t[b][a] = {-1, c};
    }
  }
  return t;
}

inline constexpr auto kUnitTable = make_unit_table();

}  // namespace detail

template <typename Scalar>
class Octonion {
 public:
  using Coords = Eigen::Matrix<Scalar, 8, 1>;

  Octonion() : c_(Coords::Constant(Scalar(0))) {}
  Octonion(const Scalar& re) : Octonion() { c_(0) = re; }
  explicit Octonion(const Coords& c) : c_(c) {}

  // e_0 = 1, e_1..e_7 imaginary units
  static Octonion unit(int k) {
    Octonion o;
    o.c_(k) = Scalar(1);
    return o;
  }

  const Coords& coords() const { return c_; }
  const Scalar& operator[](int k) const { return c_(k); }
  Scalar& operator[](int k) { return c_(k); }

  Octonion& operator+=(const Octonion& o) { c_ += o.c_; return *this; }
  Octonion& operator-=(const Octonion& o) { c_ -= o.c_; return *this; }
  Octonion& operator*=(const Scalar& s) { c_ *= s; return *this; }
  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(Octonion a, const Scalar& s) { return a *= s; }
  friend Octonion operator*(const Scalar& s, Octonion a) { return a *= s; }
  Octonion operator-() const { return Octonion(Coords(-c_)); }
  friend bool operator==(const Octonion& a, const Octonion& b) { return a.c_ == b.c_; }

  friend Octonion operator*(const Octonion& x, const Octonion& y) {
    Octonion r;
    for (int i = 0; i < 8; ++i) {
      if (x.c_(i) == Scalar(0)) continue;
      for (int j = 0; j < 8; ++j) {
        if (y.c_(j) == Scalar(0)) continue;
        const auto u = detail::kUnitTable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const Scalar p = x.c_(i) * y.c_(j);
        r.c_(u.index) = u.sign > 0 ? Scalar(r.c_(u.index) + p) : Scalar(r.c_(u.index) - p);
      }
    }
    return r;
  }

 private:
  Coords c_;
};

template <typename Scalar>
Octonion<Scalar> oct_mul(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  return x * y;
}

template <typename Scalar>
Octonion<Scalar> oct_conj(const Octonion<Scalar>& x) {
  auto c = x.coords();
  c.template tail<7>() = -c.template tail<7>();
  return Octonion<Scalar>(c);
}

template <typename Scalar>
Scalar real_part(const Octonion<Scalar>& x) {
  return x[0];
}

// N(x) = sum of squared coordinates
template <typename Scalar>
Scalar oct_norm(const Octonion<Scalar>& x) {
  Scalar n(0);
  for (int k = 0; k < 8; ++k) n = n + x[k] * x[k];
  return n;
}

using Oct = Octonion<Rational>;

// "c0 + c1 e1 - c3 e3"; zero terms omitted, "0" for zero.
std::string to_string(const Oct& x);
// Accepts the form above in any order, with optional coefficients ("e2", "-e5").
Oct parse_octonion(std::string_view text);

}  // namespace f4
