#include <gtest/gtest.h>

#include <set>

#include "f4diag/relations.hpp"

using namespace f4;

namespace {

Combo P(const char* s) { return parse_diagram(s); }

// Coefficients of f in the span of basis, found from trace pairings alone:
// solve G x = (<b_i, f>). Shares no code with the streaming relation checks.
RatVector fit(const std::vector<Combo>& basis, const Combo& f) {
  const RatMatrix g = gram_matrix(basis);
  RatVector rhs(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = trace_pairing(basis[i], f);
  const auto x = solve(g, rhs);
  EXPECT_TRUE(x.has_value());
  return x.value_or(RatVector());
}

}  // namespace

TEST(Relations, CatalogShape) {
  const auto& cat = relation_catalog();
  std::set<std::string> names;
  for (const auto& r : cat) {
    EXPECT_TRUE(names.insert(r.name).second) << r.name;
    EXPECT_EQ(r.lhs.source(), r.rhs.source()) << r.name;
    EXPECT_EQ(r.lhs.target(), r.rhs.target()) << r.name;
    EXPECT_FALSE(r.source.empty()) << r.name;
  }
  EXPECT_EQ(find_relations("vortex").size(), 5u);
  EXPECT_EQ(find_relations("pomegranate").size(), 6u);
  EXPECT_EQ(find_relations("ladderslip").size(), 2u);
  EXPECT_EQ(find_relations("chess.3").size(), 1u);
  EXPECT_EQ(find_relations("magic").size(), 1u);
  EXPECT_THROW(find_relations("nonesuch"), std::invalid_argument);
  for (const auto* r : find_relations("bosnia")) {
    EXPECT_FALSE(r->expected_to_hold);
    ASSERT_EQ(r->excluded_delta.size(), 1u);
    EXPECT_EQ(r->excluded_delta[0], Rational(1));
  }
  const auto magic = find_relations("magic")[0];
  ASSERT_EQ(magic->excluded_delta.size(), 1u);
  EXPECT_EQ(magic->excluded_delta[0], Rational(-2));
}

TEST(Relations, SmallRelationsHold) {
  for (const char* name : {"vortex", "chess", "topsy", "venom", "pomegranate", "ladderslip", "magic", "triangle"}) {
    for (const auto* r : find_relations(name)) {
      const RelationReport rep = check_relation(*r);
      EXPECT_TRUE(rep.holds) << rep.name;
      EXPECT_TRUE(rep.ok()) << rep.name;
      EXPECT_EQ(rep.max_deviation_terms, 0u) << rep.name;
    }
  }
}

TEST(Relations, AlternativeQuotientFailsAsExpected) {
  for (const auto* r : find_relations("bosnia")) {
    const RelationReport rep = check_relation(*r);
    EXPECT_FALSE(rep.holds);
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.max_deviation_terms, 0u);
  }
}

TEST(Relations, BrokenRelationIsDetected) {
  RelationSpec r;
  r.name = "wrong-loop";
  r.lhs = P("split ; merge");
  r.rhs = P("2 * id(1)");
  const RelationReport rep = check_relation(r);
  EXPECT_FALSE(rep.holds);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.basis_checked, 26u);
}

// The magic coefficients fitted from pairings: H + I + dotcross = (1/6)(jail + hourglass + cross).
TEST(Relations, MagicCoefficientFromPairings) {
  const auto five = bigfive();
  const RatVector x = fit(five, P("named(dotcross)"));
  // dotcross = -H - I + 1/6 (jail + hourglass + cross)
  EXPECT_EQ(x(0), Rational(1, 6));
  EXPECT_EQ(x(1), Rational(1, 6));
  EXPECT_EQ(x(2), Rational(1, 6));
  EXPECT_EQ(x(3), Rational(-1));
  EXPECT_EQ(x(4), Rational(-1));
}

TEST(Relations, SquareCoefficientsFromPairings) {
  const RatVector x = fit(bigfive(), build_named("square"));
  EXPECT_EQ(x(0), Rational(5, 36));
  EXPECT_EQ(x(1), Rational(5, 36));
  EXPECT_EQ(x(2), Rational(-1, 4));
  EXPECT_EQ(x(3), Rational(5, 6));
  EXPECT_EQ(x(4), Rational(5, 6));
}

TEST(Relations, PentagonCoefficientsFromPairings) {
  const RatVector x = fit(brutal(), build_named("pentagon"));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(x(i), Rational(-1, 3)) << i;
  for (int i = 5; i < 10; ++i) EXPECT_EQ(x(i), Rational(-7, 144)) << i;
  for (int i = 10; i < 15; ++i) EXPECT_EQ(x(i), Rational(1, 16)) << i;
}

TEST(Relations, TriangleCoefficientFromData) {
  const SparseTensor tri = phi_tensor(build_named("triangle"));
  SparseTensor m = phi_tensor(P("merge"));
  m.scale(Rational(-1));
  EXPECT_EQ(tri, m);
}

TEST(Relations, Poles) {
  EXPECT_TRUE(rational_poles(RatFunc::parse("a^2 + d")).empty());
  const auto p = rational_poles(RatFunc::parse("1/((d+2)*(3*d-5)*(d^2+1))"));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], Rational(-2));
  EXPECT_EQ(p[1], Rational(5, 3));
  // alpha is fixed at 7/3, so 3a - 7 vanishes identically
  EXPECT_THROW(rational_poles(RatFunc::parse("1/(3*a-7)")), PoleError);
}

TEST(Relations, SpongeTable) {
  const auto entries = check_sponge_products();
  EXPECT_EQ(entries.size(), 25u);
  for (const auto& s : entries) EXPECT_TRUE(s.ok()) << s.e << " " << s.f << " " << s.lambda;
}

TEST(Relations, CoefficientSystemNames) {
  for (const char* n : {"sqburst", "pentburst", "kappa", "triangle"}) EXPECT_EQ(coefficient_system(n).name, n);
  EXPECT_THROW(coefficient_system("nope"), std::invalid_argument);
  const auto& k = coefficient_system("kappa");
  const RfVector s = rf_solve(k.system, k.rhs);
  EXPECT_EQ(s(0), RatFunc::parse("-d/6"));
  EXPECT_EQ(s(1), RatFunc::parse("2*d/(3*(d+2))"));
}
