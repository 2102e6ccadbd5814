// One line per acceptance criterion: "[PASS] n name (seconds)" or "[FAIL] ...".
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "f4diag/derivations.hpp"
#include "f4diag/functor.hpp"
#include "f4diag/relations.hpp"
#include "support/oracle.hpp"

using namespace f4;
using f4::testing::random_alb;
using f4::testing::random_oct;
using f4::testing::random_traceless;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Combo P(const char* s) { return parse_diagram(s); }

Rational at_point(const RatFunc& f) { return f.specialize(phi_alpha(), phi_delta()); }

// Coefficient of term t (given as an expression) in a catalogued side.
RatFunc coefficient_of(const Combo& side, const char* expr) {
  const Combo probe = P(expr);
  for (const auto& [c, t] : side.entries())
    if (same_term(t, probe.entries()[0].second)) return c;
  return RatFunc(0);
}

bool relation_holds(const std::string& name, Outcome& o, std::size_t expect_inputs = 0) {
  bool all = true;
  for (const auto* r : find_relations(name)) {
    const RelationReport rep = check_relation(*r);
    o.require(rep.holds, rep.name + " fails");
    if (expect_inputs) o.require(rep.basis_checked == expect_inputs, rep.name + " checked " + std::to_string(rep.basis_checked));
    all = all && rep.holds;
  }
  return all;
}

Outcome c1() {
  Outcome o;
  const Combo loop = build_named("loop");
  for (int i = 0; i < kDimV; ++i) {
    SparseTensor want = SparseTensor::basis({i});
    want.scale(Rational(7, 3));
    o.require(phi_apply_basis(loop, {i}) == want, "loop on b_" + std::to_string(i));
  }
  return o;
}

Outcome c2() {
  Outcome o;
  o.require(phi_closed(P("cup ; cap")) == Rational(26), "bubble");
  o.require(phi_tensor(P("cup ; merge")).is_zero(), "lollipop");
  return o;
}

Outcome c3() {
  Outcome o;
  for (const char* fam : {"vortex", "venom", "chess", "topsy", "turvy", "pomegranate", "ladderslip"})
    relation_holds(fam, o);
  return o;
}

Outcome c4() {
  Outcome o;
  relation_holds("magic", o, 676);
  const RelationSpec& magic = *find_relations("magic")[0];
  for (const char* t : {"named(jail)", "named(hourglass)", "named(cross)"})
    o.require(at_point(coefficient_of(magic.rhs, t)) == Rational(1, 6), std::string("coefficient of ") + t);
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 100; ++it) {
    const Alb a = random_traceless(rng);
    o.require(project_v(jordan(project_v(jordan(a, a)), a)) == Rational(1, 6) * alb_trace(jordan(a, a)) * a,
              "cubic identity");
  }
  for (int it = 0; it < 100; ++it) {
    const Alb a = random_traceless(rng), b = random_traceless(rng), c = random_traceless(rng);
    const Alb lhs = project_v(jordan(project_v(jordan(a, b)), c)) + project_v(jordan(project_v(jordan(b, c)), a)) +
                    project_v(jordan(project_v(jordan(a, c)), b));
    const Alb rhs = Rational(1, 6) * (bform(b, c) * a + bform(a, b) * c + bform(a, c) * b);
    o.require(lhs == rhs, "polarized identity");
  }
  return o;
}

Outcome c5() {
  Outcome o;
  relation_holds("sqburst", o, 676);
  relation_holds("pentburst", o, 676);
  const RelationSpec& sq = *find_relations("sqburst")[0];
  o.require(at_point(coefficient_of(sq.rhs, "named(jail)")) == Rational(5, 36), "beta1");
  o.require(at_point(coefficient_of(sq.rhs, "named(H)")) == Rational(5, 6), "beta2");
  o.require(at_point(coefficient_of(sq.rhs, "named(cross)")) == Rational(-1, 4), "beta3");
  const RelationSpec& pent = *find_relations("pentburst")[0];
  o.require(at_point(coefficient_of(pent.rhs, "named(brutal[0])")) == Rational(-1, 3), "gamma1");
  o.require(at_point(coefficient_of(pent.rhs, "named(brutal[5])")) == Rational(-7, 144), "gamma2");
  o.require(at_point(coefficient_of(pent.rhs, "named(brutal[10])")) == Rational(1, 16), "gamma3");
  return o;
}

Outcome c6() {
  Outcome o;
  relation_holds("triangle", o);
  const RelationSpec& tri = *find_relations("triangle")[0];
  o.require(at_point(coefficient_of(tri.rhs, "merge")) == Rational(-1), "triangle coefficient");
  relation_holds("3spike", o, 676);
  return o;
}

Outcome c7() {
  Outcome o;
  const IdempotentReport r = check_idempotents();
  o.require(r.idempotent, "idempotent");
  o.require(r.orthogonal, "orthogonal");
  o.require(r.complete, "sum is id(2)");
  const std::vector<Rational> want = {1, 52, 273, 26, 324};
  o.require(r.dimensions == want, "dimensions");
  return o;
}

Outcome c8() {
  Outcome o;
  o.require(phi_closed(closure(P("asym(2)"))) == Rational(325), "asym(2) trace");
  o.require(phi_closed(closure(P("asym(3)"))) == Rational(2600), "asym(3) trace");
  o.require(phi_closed(closure(build_named("merge_bridge"))) == Rational(-91, 3), "merge bridge");
  return o;
}

Outcome c9() {
  Outcome o;
  o.require(gram_rank(bigfive()) == 5, "bigfive rank");
  o.require(gram_rank(brutal()) == 15, "brutal rank");
  return o;
}

Outcome c10() {
  Outcome o;
  const SackReport r = check_sack();
  o.require(r.sack_nonzero == 0, "e1 composite nonzero in " + std::to_string(r.sack_nonzero) + " entries");
  o.require(r.plain_nonzero > 0, "control composite vanished");
  o.require(r.closed_scalar.is_zero(), "closed scalar " + r.closed_scalar.str());
  return o;
}

Outcome c11() {
  Outcome o;
  for (const char* name : {"sqburst", "pentburst", "kappa"}) {
    const CoefficientSystem& s = coefficient_system(name);
    const RfVector x = rf_solve(s.system, s.rhs);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      o.require(x(i) == s.expected[static_cast<std::size_t>(i)], s.unknowns[static_cast<std::size_t>(i)]);
  }
  const CoefficientSystem& k = coefficient_system("kappa");
  const RfVector kx = rf_solve(k.system, k.rhs);
  o.require(kx(0) == RatFunc::parse("-d/6"), "kappa1");
  o.require(kx(1) == RatFunc::parse("2*d/(3*(d+2))"), "kappa2");
  return o;
}

Outcome c12() {
  Outcome o;
  const auto basis = derivation_basis();
  o.require(basis.size() == 52, "dimension " + std::to_string(basis.size()));
  const EquivarianceReport r = check_equivariance(basis);
  o.require(r.unit_killed && r.trace_killed, "unit or trace");
  o.require(r.merge_residual == 0, "merge residual");
  o.require(r.cap_residual == 0, "cap residual");
  o.require(r.cup_residual == 0, "cup residual");
  return o;
}

Outcome c13() {
  Outcome o;
  std::mt19937_64 rng(77);
  const BasisData& bd = basis_data();
  // dual basis of B_A: the duals of B_V and 1_A / 3
  std::vector<Alb> dual_a(bd.dual);
  dual_a.push_back(Rational(1, 3) * Alb::identity());
  for (int it = 0; it < 100; ++it) {
    const Alb a = random_alb(rng), b = random_alb(rng), c = random_alb(rng);
    o.require(left_mult_trace(a) == Rational(9) * alb_trace(a), "trace of L_a");
    o.require(alb_trace(jordan(jordan(a, b), c)) == alb_trace(jordan(a, jordan(b, c))), "trace form associativity");
  }
  for (int it = 0; it < 100; ++it) {
    OctMatrix<Rational> x, y, z;
    for (auto* m : {&x, &y, &z})
      for (auto& row : *m)
        for (auto& e : row) e = random_oct(rng);
    o.require(real_trace(oct_matmul(x, y)) == real_trace(oct_matmul(y, x)), "real trace cyclicity");
    o.require(real_trace(oct_matmul(oct_matmul(x, y), z)) == real_trace(oct_matmul(x, oct_matmul(y, z))),
              "real trace associativity");
  }
  for (int it = 0; it < 100; ++it) {
    const Alb a = random_alb(rng);
    RatMatrix lhs = RatMatrix::Zero(kDimA, kDimA), rhs = RatMatrix::Zero(kDimA, kDimA);
    for (int k = 0; k < kDimA; ++k) {
      const Alb& bk = basis_a(k);
      const Alb& dk = dual_a[static_cast<std::size_t>(k)];
      lhs += coords_a(jordan(a, bk)) * coords_a(dk).transpose();
      rhs += coords_a(bk) * coords_a(jordan(dk, a)).transpose();
    }
    o.require(lhs == rhs, "teleport");
  }
  for (int it = 0; it < 100; ++it) {
    const Oct x = random_oct(rng), y = random_oct(rng);
    o.require(oct_norm(x * y) == oct_norm(x) * oct_norm(y), "composition law");
    o.require((x * x) * y == x * (x * y) && (y * x) * x == y * (x * x), "alternativity");
  }
  return o;
}

std::vector<std::string> fixture(const std::string& name) {
  std::ifstream in(std::string(F4DIAG_TEST_DATA) + "/" + name);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

Outcome c14() {
  Outcome o;
  const auto good = fixture("grammar_roundtrip.txt");
  const auto bad = fixture("grammar_arity_errors.txt");
  o.require(good.size() == 50, "round-trip fixture count");
  o.require(bad.size() == 10, "arity fixture count");
  for (const auto& s : good) {
    try {
      const Combo c = parse_diagram(s);
      o.require(parse_diagram(c.str()) == c, "round trip of " + s);
    } catch (const std::exception& e) {
      o.require(false, s + ": " + e.what());
    }
  }
  for (const auto& s : bad) {
    try {
      parse_diagram(s);
      o.require(false, "accepted " + s);
    } catch (const ExprArityError& e) {
      o.require(e.position < s.size(), "position for " + s);
    } catch (const std::exception& e) {
      o.require(false, s + ": " + e.what());
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "loop scalar 7/3 on all 26 basis vectors", 1, c1},
      {2, "bubble 26 and lollipop 0", 1, c2},
      {3, "pivotal and symmetric relation suite", 30, c3},
      {4, "Cayley-Hamilton relation with coefficient 1/6, algebra identities", 30, c4},
      {5, "square and pentagon reductions at (7/3, 26)", 300, c5},
      {6, "triangle coefficient -1 and the nonplanar tree relation", 60, c6},
      {7, "idempotents and dimensions 1 52 273 26 324", 60, c7},
      {8, "closed scalars 325, 2600, -91/3", 60, c8},
      {9, "Gram ranks 5 and 15", 600, c9},
      {10, "e1 composite vanishes, closed scalar 0", 120, c10},
      {11, "symbolic coefficient formulas", 1, c11},
      {12, "derivation algebra of dimension 52, equivariance", 600, c12},
      {13, "Albert and octonion property suite", 30, c13},
      {14, "grammar fixtures", 1, c14},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) o.require(false, "over the time budget");
    failed += !o.pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.2f", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << time << " s, budget "
              << c.budget << " s)";
    if (!o.pass) std::cout << ": " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed;
}
