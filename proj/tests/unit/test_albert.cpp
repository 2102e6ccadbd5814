#include <gtest/gtest.h>

#include <random>

#include "f4diag/albert.hpp"
#include "support/oracle.hpp"

using namespace f4;
using f4::testing::random_alb;
using f4::testing::random_oct;
using f4::testing::random_traceless;

TEST(Octonion, FanoTable) {
  const Oct e1 = Oct::unit(1), e2 = Oct::unit(2), e4 = Oct::unit(4);
  EXPECT_EQ(e1 * e2, e4);
  EXPECT_EQ(e2 * e1, -e4);
  EXPECT_EQ(e2 * e4, e1);
  EXPECT_EQ(e4 * e1, e2);
  for (int i = 1; i < 8; ++i) {
    EXPECT_EQ(Oct::unit(i) * Oct::unit(i), Oct(Rational(-1)));
    // e_i e_{i+1} = e_{i+3}
    EXPECT_EQ(Oct::unit(i) * Oct::unit(i % 7 + 1), Oct::unit((i + 2) % 7 + 1));
  }
}

TEST(Octonion, TextRoundTrip) {
  const Oct x = parse_octonion("1/2 - 3 e2 + e7");
  EXPECT_EQ(x[0], Rational(1, 2));
  EXPECT_EQ(x[2], Rational(-3));
  EXPECT_EQ(x[7], Rational(1));
  EXPECT_EQ(parse_octonion(to_string(x)), x);
  EXPECT_EQ(to_string(Oct()), "0");
}

TEST(Octonion, CompositionAndAlternativity) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 20; ++it) {
    const Oct x = random_oct(rng), y = random_oct(rng);
    EXPECT_EQ(oct_norm(x * y), oct_norm(x) * oct_norm(y));
    EXPECT_EQ((x * x) * y, x * (x * y));
    EXPECT_EQ((y * x) * x, y * (x * x));
    EXPECT_EQ(oct_conj(x * y), oct_conj(y) * oct_conj(x));
    EXPECT_EQ(x * oct_conj(x), Oct(oct_norm(x)));
  }
  // not associative
  EXPECT_NE((Oct::unit(1) * Oct::unit(2)) * Oct::unit(3), Oct::unit(1) * (Oct::unit(2) * Oct::unit(3)));
}

TEST(Albert, SmallExamples) {
  const Alb one = Alb::identity(), e11 = Alb::idempotent(0), e22 = Alb::idempotent(1);
  EXPECT_EQ(alb_trace(one), Rational(3));
  EXPECT_EQ(alb_trace(e11 - e22), Rational(0));
  EXPECT_EQ(bform(e11, e11), Rational(1));
  Alb a;
  a.diag = {1, 2, 3};
  a.off[0] = Oct::unit(1);
  EXPECT_EQ(bform(a, a), Rational(16));
  EXPECT_EQ(left_mult_trace(one), Rational(27));
  EXPECT_EQ(left_mult_trace(e11), Rational(9));
  EXPECT_EQ(project_v(one), Alb());
  EXPECT_EQ(jordan(e11, e11), e11);
  EXPECT_EQ(jordan(e11, e22), Alb());
}

TEST(Albert, TextRoundTrip) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 10; ++it) {
    const Alb a = random_alb(rng);
    EXPECT_EQ(parse_albert(to_string(a)), a);
  }
  EXPECT_THROW(parse_albert("diag(1,2); x1=0; x2=0; x3=0"), std::invalid_argument);
}

TEST(Albert, BasisAndDual) {
  const BasisData& bd = basis_data();
  ASSERT_EQ(bd.basis.size(), 26u);
  Rational total = 0;
  for (int i = 0; i < kDimV; ++i) {
    for (int j = 0; j < kDimV; ++j)
      EXPECT_EQ(bform(bd.dual[static_cast<std::size_t>(i)], bd.basis[static_cast<std::size_t>(j)]),
                Rational(i == j ? 1 : 0));
    total += bform(bd.basis[static_cast<std::size_t>(i)], bd.dual[static_cast<std::size_t>(i)]);
    EXPECT_EQ(alb_trace(bd.basis[static_cast<std::size_t>(i)]), Rational(0));
  }
  EXPECT_EQ(total, Rational(26));
  EXPECT_EQ(bd.gram * bd.gram_inv, RatMatrix::Identity(kDimV, kDimV));
  std::mt19937_64 rng(4);
  const Alb v = random_traceless(rng);
  EXPECT_EQ(from_coords_v(coords_v(v)), v);
  const Alb a = random_alb(rng);
  EXPECT_EQ(from_coords_a(coords_a(a)), a);
  EXPECT_THROW(coords_v(Alb::identity()), std::invalid_argument);
}

TEST(Albert, JordanIdentityAndTraceForm) {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 10; ++it) {
    const Alb a = random_alb(rng), b = random_alb(rng), c = random_alb(rng);
    const Alb a2 = jordan(a, a);
    // (a^2 o b) o a = a^2 o (b o a)
    EXPECT_EQ(jordan(jordan(a2, b), a), jordan(a2, jordan(b, a)));
    EXPECT_EQ(alb_trace(jordan(jordan(a, b), c)), alb_trace(jordan(a, jordan(b, c))));
    EXPECT_EQ(left_mult_trace(a), Rational(9) * alb_trace(a));
  }
}

TEST(Albert, CayleyHamiltonOnTraceless) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 10; ++it) {
    const Alb a = random_traceless(rng);
    EXPECT_EQ(project_v(jordan(project_v(jordan(a, a)), a)), Rational(1, 6) * alb_trace(jordan(a, a)) * a);
  }
}
