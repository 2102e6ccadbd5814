#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "f4diag/octonion.hpp"

namespace f4 {

template <typename Scalar>
using OctMatrix = std::array<std::array<Octonion<Scalar>, 3>, 3>;

template <typename Scalar>
OctMatrix<Scalar> oct_matmul(const OctMatrix<Scalar>& x, const OctMatrix<Scalar>& y) {
  OctMatrix<Scalar> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

// tr_R(X) = RP(X_11) + RP(X_22) + RP(X_33)
template <typename Scalar>
Scalar real_trace(const OctMatrix<Scalar>& x) {
  return real_part(x[0][0]) + real_part(x[1][1]) + real_part(x[2][2]);
}

// Self-adjoint 3x3 octonionic matrix
//   [ l1     x3    ~x2 ]
//   [ ~x3    l2     x1 ]
//   [ x2    ~x1     l3 ]
// where ~ is octonion conjugation. Self-adjointness is built into the storage.
template <typename Scalar>
struct AlbertElement {
  std::array<Scalar, 3> diag{Scalar(0), Scalar(0), Scalar(0)};
  std::array<Octonion<Scalar>, 3> off{};

  static AlbertElement identity() {
    AlbertElement a;
    a.diag = {Scalar(1), Scalar(1), Scalar(1)};
    return a;
  }
  // E_ii
  static AlbertElement idempotent(int i) {
    AlbertElement a;
    a.diag[static_cast<std::size_t>(i)] = Scalar(1);
    return a;
  }
  // x E_ij + ~x E_ji for i != j (0-based)
  static AlbertElement offdiag(int i, int j, const Octonion<Scalar>& x) {
    OctMatrix<Scalar> m;
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x;
    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = oct_conj(x);
    return from_matrix(m);
  }

  OctMatrix<Scalar> to_matrix() const {
    OctMatrix<Scalar> m;
    for (std::size_t i = 0; i < 3; ++i) m[i][i] = Octonion<Scalar>(diag[i]);
    m[0][1] = off[2];
    m[1][0] = oct_conj(off[2]);
    m[1][2] = off[0];
    m[2][1] = oct_conj(off[0]);
    m[2][0] = off[1];
    m[0][2] = oct_conj(off[1]);
    return m;
  }
  // Reads the upper triangle and the real diagonal; the input is assumed self-adjoint.
  static AlbertElement from_matrix(const OctMatrix<Scalar>& m) {
    AlbertElement a;
    for (std::size_t i = 0; i < 3; ++i) a.diag[i] = real_part(m[i][i]);
    a.off[2] = m[0][1];
    a.off[0] = m[1][2];
    a.off[1] = oct_conj(m[0][2]);
    return a;
  }

  AlbertElement& operator+=(const AlbertElement& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      diag[i] = diag[i] + b.diag[i];
      off[i] += b.off[i];
    }
    return *this;
  }
  AlbertElement& operator-=(const AlbertElement& b) {
    for (std::size_t i = 0; i < 3; ++i) {
      diag[i] = diag[i] - b.diag[i];
      off[i] -= b.off[i];
    }
    return *this;
  }
  AlbertElement& operator*=(const Scalar& s) {
    for (std::size_t i = 0; i < 3; ++i) {
      diag[i] = diag[i] * s;
      off[i] *= s;
    }
    return *this;
  }
  friend AlbertElement operator+(AlbertElement a, const AlbertElement& b) { return a += b; }
  friend AlbertElement operator-(AlbertElement a, const AlbertElement& b) { return a -= b; }
  friend AlbertElement operator*(const Scalar& s, AlbertElement a) { return a *= s; }
  friend AlbertElement operator*(AlbertElement a, const Scalar& s) { return a *= s; }
  friend bool operator==(const AlbertElement& a, const AlbertElement& b) {
    return a.diag == b.diag && a.off == b.off;
  }
};

// a o b = (ab + ba)/2
template <typename Scalar>
AlbertElement<Scalar> jordan(const AlbertElement<Scalar>& a, const AlbertElement<Scalar>& b) {
  const auto ma = a.to_matrix(), mb = b.to_matrix();
  const auto ab = oct_matmul(ma, mb), ba = oct_matmul(mb, ma);
  OctMatrix<Scalar> s;
  const Scalar half = Scalar(1) / Scalar(2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[i][j] = (ab[i][j] + ba[i][j]) * half;
  return AlbertElement<Scalar>::from_matrix(s);
}

template <typename Scalar>
Scalar alb_trace(const AlbertElement<Scalar>& a) {
  return a.diag[0] + a.diag[1] + a.diag[2];
}

// B(a, b) = tr(a o b)
template <typename Scalar>
Scalar bform(const AlbertElement<Scalar>& a, const AlbertElement<Scalar>& b) {
  return alb_trace(jordan(a, b));
}

// pi(a) = a - tr(a)/3 * 1
template <typename Scalar>
AlbertElement<Scalar> project_v(const AlbertElement<Scalar>& a) {
  const Scalar t = alb_trace(a) / Scalar(3);
  AlbertElement<Scalar> r = a;
  for (auto& l : r.diag) l = l - t;
  return r;
}

using Alb = AlbertElement<Rational>;

inline constexpr int kDimV = 26;
inline constexpr int kDimA = 27;

// The fixed basis of V: E11-E22, E22-E33, then x E_ij + ~x E_ji for
// (i,j) = (1,2), (1,3), (2,3) and x = 1, e1, ..., e7. The full basis B_A of A
// appends 1_A.
struct BasisData {
  std::vector<Alb> basis;
  std::vector<Alb> dual;
  RatMatrix gram;
  RatMatrix gram_inv;
};

BasisData build_basis();
// Shared instance, built on first use.
const BasisData& basis_data();

// Coordinates of a traceless element in the basis of V; throws if tr(a) != 0.
RatVector coords_v(const Alb& a);
Alb from_coords_v(const RatVector& c);
// Coordinates in B_A (index 26 is the coefficient of 1_A).
RatVector coords_a(const Alb& a);
Alb from_coords_a(const RatVector& c);
Alb basis_a(int k);

// Tr of b -> a o b as a 27x27 matrix in B_A.
Rational left_mult_trace(const Alb& a);

// "diag(l1,l2,l3); x1=<oct>; x2=<oct>; x3=<oct>"
std::string to_string(const Alb& a);
Alb parse_albert(std::string_view text);

}  // namespace f4
