#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "f4diag/albert.hpp"
#include "f4diag/diagram.hpp"
#include "f4diag/tensor.hpp"

namespace f4 {

// The point where the functor exists.
inline const Rational& phi_alpha() {
  static const Rational a(7, 3);
  return a;
}
inline const Rational& phi_delta() {
  static const Rational d(26);
  return d;
}

// Dense generator images, indices (outputs..., inputs...):
//   merge_t[k][i][j]  coefficient of b_k in pi(b_i o b_j)
//   split_t[i][j][a]  coefficient of b_i (x) b_j in sum_b b (x) pi(b^v o b_a)
//   cup_t[i][j]       inverse Gram matrix (coordinates of sum_b b (x) b^v)
//   cap_t[i][j]       B(b_i, b_j)
struct GeneratorTensors {
  ExactTensor merge_t;
  ExactTensor split_t;
  ExactTensor cup_t;
  ExactTensor cap_t;
};

class Functor {
 public:
  using Pair = std::pair<int, Rational>;
  using Triple = std::tuple<int, int, Rational>;
  using Quad = std::tuple<int, int, int, Rational>;

  Functor();
  // Shared instance; the generator data is computed once and then only read.
  static const Functor& instance();

  const BasisData& basis() const { return *basis_; }
  const GeneratorTensors& generators() const { return gens_; }

  // Nonzero parts of the generators, for streaming evaluation.
  const std::vector<Pair>& merge_of(int i, int j) const { return merge_[static_cast<std::size_t>(i * kLegDim + j)]; }
  const std::vector<Triple>& split_of(int a) const { return split_[static_cast<std::size_t>(a)]; }
  const std::vector<Triple>& cup_entries() const { return cup_; }
  const Rational& cap_of(int i, int j) const { return gens_.cap_t.entries[static_cast<std::size_t>(i * kLegDim + j)]; }
  // T_ijk = tr((b_i o b_j) o b_k), the fully symmetric lowered vertex.
  const std::vector<Quad>& vertex_entries() const { return vertex_; }

 private:
  const BasisData* basis_;
  GeneratorTensors gens_;
  std::vector<std::vector<Pair>> merge_;
  std::vector<std::vector<Triple>> split_;
  std::vector<Triple> cup_;
  std::vector<Quad> vertex_;
};

// Coefficients evaluated at (7/3, 26); throws PoleError if any coefficient has a pole there.
std::vector<std::pair<Rational, TermPtr>> specialize(const Combo& f);

// Layer-by-layer evaluation of a single term on a sparse input of rank source(t).
SparseTensor phi_apply(const TermPtr& t, const SparseTensor& input);
SparseTensor phi_apply(const Combo& f, const SparseTensor& input);
SparseTensor phi_apply_basis(const Combo& f, const std::vector<int>& idx);

// Full image of a diagram as a tensor with legs (outputs..., inputs...),
// computed by tensor-network contraction.
SparseTensor phi_tensor(const Combo& f, ContractionOrder order = ContractionOrder::Greedy);
SparseTensor phi_tensor(const TermPtr& t, ContractionOrder order = ContractionOrder::Greedy);

// Scalar of a closed (0 -> 0) diagram by tensor-network contraction.
Rational phi_closed(const Combo& f, ContractionOrder order = ContractionOrder::Greedy);

// <f, g> = closure of (g ; mirror(f)).
Rational trace_pairing(const Combo& f, const Combo& g);
RatMatrix gram_matrix(const std::vector<Combo>& fs);
int gram_rank(const std::vector<Combo>& fs);

// Summary of a tensor-network for a term: trivalent vertices, wires, closed loops.
struct WiringSummary {
  int vertices = 0;
  int wires = 0;
  int loops = 0;
};
WiringSummary wiring_summary(const TermPtr& t);

}  // namespace f4
