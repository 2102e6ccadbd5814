#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <vector>

#include "f4diag/diagram.hpp"

using namespace f4;

namespace {

std::vector<std::string> fixture(const std::string& name) {
  std::ifstream in(std::string(F4DIAG_TEST_DATA) + "/" + name);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

Combo P(const char* s) { return parse_diagram(s); }

}  // namespace

TEST(Diagram, GeneratorArities) {
  EXPECT_EQ(merge_term()->source(), 2);
  EXPECT_EQ(merge_term()->target(), 1);
  EXPECT_EQ(split_term()->source(), 1);
  EXPECT_EQ(split_term()->target(), 2);
  EXPECT_EQ(cup_term()->source(), 0);
  EXPECT_EQ(cup_term()->target(), 2);
  EXPECT_EQ(cap_term()->source(), 2);
  EXPECT_EQ(cap_term()->target(), 0);
  EXPECT_EQ(cross_term()->source(), 2);
  EXPECT_EQ(id_term(4)->target(), 4);
}

TEST(Diagram, NormalForm) {
  // associativity is flattened and identities absorbed
  const TermPtr a = compose_terms({compose_terms({split_term(), merge_term()}), split_term()});
  const TermPtr b = compose_terms({split_term(), compose_terms({merge_term(), split_term()})});
  EXPECT_TRUE(same_term(a, b));
  EXPECT_TRUE(same_term(compose_terms({id_term(2), merge_term(), id_term(1)}), merge_term()));
  EXPECT_TRUE(same_term(tensor_terms({id_term(1), id_term(1)}), id_term(2)));
  EXPECT_THROW(compose_terms({merge_term(), merge_term()}), ArityError);
}

TEST(Diagram, CombosMergeDuplicates) {
  const Combo c = P("merge + merge - 2 * merge");
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(c.source(), 2);
  EXPECT_EQ(c.target(), 1);
  const Combo d = P("1/2 * cross + 1/2 * cross");
  EXPECT_EQ(d, Combo(cross_term()));
}

TEST(Diagram, ParserExamples) {
  const Combo h = P("merge ; split");
  EXPECT_EQ(h.source(), 2);
  EXPECT_EQ(h.target(), 2);
  EXPECT_EQ(h, build_named("I"));
  EXPECT_THROW(P("cap ; (id(1) @ merge)"), ExprArityError);
  const Combo rhs = P("1/6 * (id(2) + (cap;cup) + cross)");
  EXPECT_EQ(rhs.size(), 3u);
  for (const auto& [c, t] : rhs.entries()) EXPECT_EQ(c, RatFunc(Rational(1, 6)));
  // precedence: scalar, then @, then ;, then + and -
  EXPECT_EQ(P("2 * merge @ id(1) ; merge"), P("(2 * (merge @ id(1))) ; merge"));
  EXPECT_EQ(P("cap ; cup + cross"), P("(cap ; cup) + cross"));
}

TEST(Diagram, SyntaxErrorsCarryPositions) {
  for (const char* bad : {"merge ;", "merge ++ split", "id(", "foo", "named(nope)", "3/0 * merge", "(merge"}) {
    try {
      P(bad);
      ADD_FAILURE() << bad;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position, std::string(bad).size()) << bad;
    } catch (const std::invalid_argument&) {
      // unknown names are reported by the builder
    }
  }
}

TEST(Diagram, RoundTripFixtures) {
  const auto lines = fixture("grammar_roundtrip.txt");
  ASSERT_EQ(lines.size(), 50u);
  for (const auto& s : lines) {
    const Combo c = parse_diagram(s);
    const Combo back = parse_diagram(c.str());
    EXPECT_EQ(back, c) << s;
    EXPECT_EQ(back.str(), c.str()) << s;
  }
}

TEST(Diagram, ArityErrorFixtures) {
  const auto lines = fixture("grammar_arity_errors.txt");
  ASSERT_EQ(lines.size(), 10u);
  for (const auto& s : lines) {
    try {
      parse_diagram(s);
      ADD_FAILURE() << "accepted: " << s;
    } catch (const ExprArityError& e) {
      EXPECT_LT(e.position, s.size()) << s;
      EXPECT_NE(std::string(e.what()).find("at " + std::to_string(e.position)), std::string::npos);
    }
  }
}

TEST(Diagram, RotSwitchMirror) {
  const Combo jail = build_named("jail");
  const Combo r = rot(jail);
  EXPECT_EQ(r.source(), 2);
  EXPECT_EQ(r.target(), 2);
  EXPECT_EQ(rot(P("merge")).source(), 2);
  EXPECT_EQ(rot(P("merge")).target(), 1);
  EXPECT_EQ(rot(P("split")).source(), 1);
  EXPECT_THROW(rot(P("cup")), ArityError);
  EXPECT_EQ(switch_op(jail), P("cross"));
  EXPECT_THROW(switch_op(P("split")), ArityError);
  EXPECT_EQ(mirror(P("merge")), P("split"));
  EXPECT_EQ(mirror(P("cup")), P("cap"));
  EXPECT_EQ(mirror(P("cross")), P("cross"));
  for (const auto& name : named_diagrams()) {
    const Combo f = build_named(name);
    EXPECT_EQ(mirror(mirror(f)), f) << name;
    EXPECT_EQ(mirror(f).source(), f.target()) << name;
  }
  // linear in the coefficients
  EXPECT_EQ(rot(P("3 * cross")), RatFunc(3) * rot(P("cross")));
}

TEST(Diagram, Symmetrizers) {
  EXPECT_EQ(symmetrizer(1, false), P("id(1)"));
  EXPECT_EQ(symmetrizer(2, false), P("1/2 * id(2) + 1/2 * cross"));
  EXPECT_EQ(symmetrizer(2, true), P("1/2 * id(2) - 1/2 * cross"));
  EXPECT_EQ(symmetrizer(3, false).size(), 6u);
  EXPECT_EQ(symmetrizer(4, true).size(), 24u);
  const auto [t, len] = permutation_term({2, 1, 0});
  EXPECT_EQ(len, 3);
  EXPECT_EQ(t->source(), 3);
}

TEST(Diagram, NamedLists) {
  EXPECT_EQ(bigfive().size(), 5u);
  ASSERT_EQ(brutal().size(), 15u);
  for (const auto& f : brutal()) {
    EXPECT_EQ(f.source(), 2);
    EXPECT_EQ(f.target(), 3);
  }
  const Combo e0 = build_named("e0");
  ASSERT_EQ(e0.size(), 1u);
  EXPECT_EQ(e0.entries()[0].first, RatFunc::parse("1/d"));
  EXPECT_EQ(e0.entries()[0].first.specialize(Rational(7, 3), Rational(26)), Rational(1, 26));
  EXPECT_THROW(build_named("nonesuch"), std::invalid_argument);
}

TEST(Diagram, ClosureShape) {
  const Combo c = closure(P("asym(3)"));
  EXPECT_EQ(c.source(), 0);
  EXPECT_EQ(c.target(), 0);
  EXPECT_THROW(closure(P("merge")), ArityError);
}
