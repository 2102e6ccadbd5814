#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "f4diag/derivations.hpp"
#include "f4diag/functor.hpp"
#include "support/oracle.hpp"

using namespace f4;

namespace {

const std::vector<Derivation>& basis() {
  static const std::vector<Derivation> b = compute_derivation_basis();
  return b;
}

}  // namespace

TEST(Derivations, Dimension) {
  DerivationStats st;
  const auto b = compute_derivation_basis(&st);
  EXPECT_EQ(b.size(), 52u);
  EXPECT_EQ(st.unknowns, 729);
  EXPECT_EQ(st.equations, 10206);
  EXPECT_EQ(st.rank, 729 - 52);
}

TEST(Derivations, EachBasisElementIsADerivation) {
  for (const auto& d : basis()) EXPECT_TRUE(is_derivation(d));
  Derivation not_one = Derivation::Identity(kDimA, kDimA);
  EXPECT_FALSE(is_derivation(not_one));
}

// D applied to random elements through the Albert product directly.
TEST(Derivations, LeibnizOnRandomElements) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 5; ++it) {
    const Derivation& d = basis()[rng() % basis().size()];
    const Alb a = f4::testing::random_alb(rng), b = f4::testing::random_alb(rng);
    auto apply = [&](const Alb& x) { return from_coords_a(d * coords_a(x)); };
    EXPECT_EQ(apply(jordan(a, b)), jordan(apply(a), b) + jordan(a, apply(b)));
    EXPECT_EQ(alb_trace(apply(a)), Rational(0));
    EXPECT_EQ(apply(Alb::identity()), Alb());
  }
}

TEST(Derivations, InnerDerivationsLieInTheSpan) {
  // [L_a, L_b] is a derivation of any Jordan algebra
  std::mt19937_64 rng(17);
  auto left = [](const Alb& a) {
    RatMatrix m(kDimA, kDimA);
    for (int l = 0; l < kDimA; ++l) m.col(l) = coords_a(jordan(a, basis_a(l)));
    return m;
  };
  const Alb a = f4::testing::random_alb(rng), b = f4::testing::random_alb(rng);
  const Derivation inner = left(a) * left(b) - left(b) * left(a);
  EXPECT_TRUE(is_derivation(inner));
  SparseEchelon span(kDimA * kDimA);
  auto flat = [](const Derivation& d) {
    SparseRow r;
    for (int k = 0; k < kDimA; ++k)
      for (int l = 0; l < kDimA; ++l)
        if (!d(k, l).is_zero()) r.emplace_back(k * kDimA + l, d(k, l));
    return r;
  };
  for (const auto& d : basis()) span.add_row(flat(d));
  EXPECT_TRUE(span.reduce(flat(inner)).empty());
}

TEST(Derivations, BracketClosure) {
  std::vector<Derivation> few(basis().begin(), basis().begin() + 52);
  EXPECT_TRUE(closed_under_bracket(few));
  // a non-derivation breaks closure of a span it is added to
  std::vector<Derivation> bad = {basis()[0], Derivation::Identity(kDimA, kDimA)};
  bad[1](0, 1) = 1;
  EXPECT_FALSE(closed_under_bracket(bad));
}

TEST(Derivations, Equivariance) {
  const EquivarianceReport r = check_equivariance(basis());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.derivations, 52);
  EXPECT_EQ(r.merge_residual, 0u);
  EXPECT_EQ(r.cap_residual, 0u);
  EXPECT_EQ(r.cup_residual, 0u);
  // a diagonal map that is not a derivation shows up in the residuals
  Derivation fake = Derivation::Zero(kDimA, kDimA);
  fake(0, 0) = 1;
  const EquivarianceReport bad = check_equivariance({fake});
  EXPECT_FALSE(bad.ok());
  EXPECT_GT(bad.merge_residual + bad.cap_residual, 0u);
}

TEST(Derivations, ActionCommutesWithTheSquareDiagram) {
  // D on the output of the 2 -> 2 square equals the square applied to (D (x) 1 + 1 (x) D).
  const SparseTensor sq = phi_tensor(build_named("square"));
  const RatMatrix dv = restrict_to_v(basis()[7]);
  std::map<std::array<int, 4>, Rational> lhs, rhs;
  for (const auto& [key, v] : sq.entries()) {
    const int o0 = leg_of(key, 0), o1 = leg_of(key, 1), i0 = leg_of(key, 2), i1 = leg_of(key, 3);
    for (int k = 0; k < kDimV; ++k) {
      if (!dv(k, o0).is_zero()) lhs[{k, o1, i0, i1}] += dv(k, o0) * v;
      if (!dv(k, o1).is_zero()) lhs[{o0, k, i0, i1}] += dv(k, o1) * v;
      if (!dv(i0, k).is_zero()) rhs[{o0, o1, k, i1}] += v * dv(i0, k);
      if (!dv(i1, k).is_zero()) rhs[{o0, o1, i0, k}] += v * dv(i1, k);
    }
  }
  std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
  std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
  EXPECT_EQ(lhs, rhs);
}

TEST(Derivations, CacheRoundTripAndStaleness) {
  const std::string text = write_derivation_cache(basis());
  const auto back = read_derivation_cache(text);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, basis());

  std::string tampered = text;
  const auto pos = tampered.find("block 3\n") + 8;
  tampered[pos] = tampered[pos] == '0' ? '1' : '0';
  EXPECT_FALSE(read_derivation_cache(tampered).has_value());

  std::string other = text;
  other.replace(other.find("convention ") + 11, 4, "ffff");
  EXPECT_FALSE(read_derivation_cache(other).has_value());
  EXPECT_FALSE(read_derivation_cache("").has_value());
}

TEST(Derivations, CacheDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "f4diag-cache-test";
  std::filesystem::remove_all(dir);
  ::setenv("F4DIAG_CACHE_DIR", dir.c_str(), 1);
  const auto first = derivation_basis();
  const auto file = derivation_cache_file(dir);
  ASSERT_TRUE(std::filesystem::exists(file));
  const auto second = derivation_basis();
  EXPECT_EQ(first, second);
  // a corrupt file is recomputed and replaced
  { std::ofstream(file) << "garbage\n"; }
  EXPECT_EQ(derivation_basis(), first);
  std::ifstream in(file);
  std::string head;
  std::getline(in, head);
  EXPECT_EQ(head, "f4diag derivation basis");
  ::unsetenv("F4DIAG_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
