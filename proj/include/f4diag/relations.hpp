#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "f4diag/diagram.hpp"
#include "f4diag/functor.hpp"
#include "f4diag/ratfield.hpp"

namespace f4 {

// One catalogued identity lhs = rhs. Families such as "vortex" are split into
// members "vortex.1", "vortex.2", ...
struct RelationSpec {
  std::string name;
  std::string family;
  Combo lhs{0, 0};
  Combo rhs{0, 0};
  std::string source;
  // Rational delta values (at alpha = 7/3) where some coefficient has a pole.
  std::vector<Rational> excluded_delta;
  // False only for identities that are catalogued but known to fail under the functor.
  bool expected_to_hold = true;
};

const std::vector<RelationSpec>& relation_catalog();
// Members of a family, or the single relation of that name. Throws
// std::invalid_argument for unknown names.
std::vector<const RelationSpec*> find_relations(std::string_view name);
std::vector<std::string> relation_families();

struct RelationReport {
  std::string name;
  bool holds = false;
  bool expected_to_hold = true;
  // Largest number of nonzero coordinates of (lhs - rhs)(input) over all inputs.
  std::size_t max_deviation_terms = 0;
  std::size_t basis_checked = 0;
  bool ok() const { return holds == expected_to_hold; }
};

// Streams every basis vector of the source through lhs - rhs.
RelationReport check_relation(const RelationSpec& r);
RelationReport check_relation(std::string_view name);

// Zero set in delta of the denominators of f at alpha = 7/3 (rational roots only).
// Throws PoleError if the denominator vanishes for every delta.
std::vector<Rational> rational_poles(const RatFunc& f);

struct IdempotentReport {
  std::vector<std::string> names;       // e0 e1 e3 e4 etilde
  std::vector<Rational> dimensions;     // closed traces
  bool idempotent = false;
  bool orthogonal = false;
  bool complete = false;                // sum is the identity on two strands
  bool dims_match = false;
  bool ok() const { return idempotent && orthogonal && complete && dims_match; }
};
IdempotentReport check_idempotents();

// f o e = lambda e with lambda read off the data and compared with the expected value.
struct SpongeEntry {
  std::string f;
  std::string e;
  bool proportional = false;
  Rational lambda;
  Rational expected;
  bool ok() const { return proportional && lambda == expected; }
};
std::vector<SpongeEntry> check_sponge_products();

struct SackReport {
  std::size_t inputs = 0;
  std::size_t sack_nonzero = 0;        // nonzero output coordinates of the e1 composite
  std::size_t plain_nonzero = 0;       // same wiring without e1, must be nonzero
  Rational closed_scalar;              // closed trace of the 1 -> 1 composite
  Rational asym_scalar;                // the same composite with asym(2) for e1
  bool ok() const { return sack_nonzero == 0 && plain_nonzero > 0 && closed_scalar.is_zero(); }
};
SackReport check_sack();

// Symbolic coefficient systems transcribed from the derivations of the
// skein relations, with their solutions in Q(alpha, delta).
struct CoefficientSystem {
  std::string name;
  std::vector<std::string> unknowns;
  RfMatrix system;
  RfVector rhs;
  std::vector<RatFunc> expected;
};
const std::vector<CoefficientSystem>& coefficient_systems();
const CoefficientSystem& coefficient_system(std::string_view name);

}  // namespace f4
