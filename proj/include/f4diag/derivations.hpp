#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "f4diag/albert.hpp"
#include "f4diag/exactla.hpp"

namespace f4 {

// A derivation of A as a 27x27 matrix in B_A: column l holds the coordinates of D(b_l).
using Derivation = RatMatrix;

struct DerivationStats {
  int equations = 0;
  int unknowns = 0;
  int rank = 0;
};

// Nullspace of the Leibniz system D(a o b) = D(a) o b + a o D(b) over basis
// pairs. Throws std::runtime_error unless the dimension is 52.
std::vector<Derivation> compute_derivation_basis(DerivationStats* stats = nullptr);

// Same result, read from or written to the cache directory named by
// F4DIAG_CACHE_DIR when that is set.
std::vector<Derivation> derivation_basis();

bool is_derivation(const Derivation& d);
// The 26x26 block acting on V; D kills 1_A and preserves the traceless part.
RatMatrix restrict_to_v(const Derivation& d);
Derivation bracket(const Derivation& a, const Derivation& b);
// Every commutator of basis elements lies in the span of the basis.
bool closed_under_bracket(const std::vector<Derivation>& basis);

struct EquivarianceReport {
  int derivations = 0;
  bool unit_killed = true;       // D(1_A) = 0
  bool trace_killed = true;      // tr(D(b)) = 0 on B_A
  std::size_t merge_residual = 0;  // nonzero entries over all D
  std::size_t cap_residual = 0;
  std::size_t cup_residual = 0;
  bool ok() const {
    return derivations == 52 && unit_killed && trace_killed && merge_residual == 0 && cap_residual == 0 &&
           cup_residual == 0;
  }
};
EquivarianceReport check_equivariance(const std::vector<Derivation>& basis);

// Cache file handling. The convention hash changes whenever the basis of A does.
std::string basis_convention_hash();
std::string write_derivation_cache(const std::vector<Derivation>& basis);
std::optional<std::vector<Derivation>> read_derivation_cache(const std::string& text);
std::filesystem::path derivation_cache_file(const std::filesystem::path& dir);

}  // namespace f4
