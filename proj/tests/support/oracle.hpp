#pragma once

// Independent reference evaluator for tests. It walks the term tree and
// applies each generator straight from the Albert algebra (Jordan products,
// trace form, dual basis) on std::map states, sharing no tables or contraction
// code with the library functor.

#include <map>
#include <random>
#include <vector>

#include "f4diag/albert.hpp"
#include "f4diag/diagram.hpp"
#include "f4diag/tensor.hpp"

namespace f4::testing {

using State = std::map<std::vector<int>, Rational>;

class Oracle {
 public:
  Oracle() {
    const BasisData& bd = basis_data();
    merge_.resize(kDimV * kDimV);
    for (int i = 0; i < kDimV; ++i)
      for (int j = 0; j < kDimV; ++j) {
        const Alb p = project_v(jordan(bd.basis[static_cast<std::size_t>(i)], bd.basis[static_cast<std::size_t>(j)]));
        merge_[static_cast<std::size_t>(i * kDimV + j)] = coords_v(p);
      }
    // sum_b b (x) b^v; b^v expanded in the basis
    dual_.resize(kDimV);
    for (int b = 0; b < kDimV; ++b) dual_[static_cast<std::size_t>(b)] = coords_v(bd.dual[static_cast<std::size_t>(b)]);
    cap_ = RatMatrix(kDimV, kDimV);
    for (int i = 0; i < kDimV; ++i)
      for (int j = 0; j < kDimV; ++j)
        cap_(i, j) = bform(bd.basis[static_cast<std::size_t>(i)], bd.basis[static_cast<std::size_t>(j)]);
  }

  // Image of a single basis tuple under a generator.
  State gen(TermKind k, const std::vector<int>& in) const {
    State out;
    switch (k) {
      case TermKind::Merge: {
        const RatVector& c = merge_[static_cast<std::size_t>(in[0] * kDimV + in[1])];
        for (int m = 0; m < kDimV; ++m)
          if (!c(m).is_zero()) out[{m}] += c(m);
        break;
      }
      case TermKind::Split: {
        // split(a) = sum_b b (x) pi(b^v o a)
        const BasisData& bd = basis_data();
        for (int b = 0; b < kDimV; ++b) {
          const RatVector c =
              coords_v(project_v(jordan(bd.dual[static_cast<std::size_t>(b)], bd.basis[static_cast<std::size_t>(in[0])])));
          for (int m = 0; m < kDimV; ++m)
            if (!c(m).is_zero()) out[{b, m}] += c(m);
        }
        break;
      }
      case TermKind::Cup:
        for (int b = 0; b < kDimV; ++b)
          for (int m = 0; m < kDimV; ++m)
            if (!dual_[static_cast<std::size_t>(b)](m).is_zero()) out[{b, m}] += dual_[static_cast<std::size_t>(b)](m);
        break;
      case TermKind::Cap:
        if (!cap_(in[0], in[1]).is_zero()) out[{}] = cap_(in[0], in[1]);
        break;
      case TermKind::Cross:
        out[{in[1], in[0]}] = 1;
        break;
      default:
        break;
    }
    return out;
  }

  // Apply t to legs [offset, offset + source) of every tuple in s.
  State apply(const TermPtr& t, const State& s, std::size_t offset = 0) const {
    switch (t->kind()) {
      case TermKind::Id:
        return s;
      case TermKind::Compose: {
        State cur = s;
        for (const auto& p : t->parts()) cur = apply(p, cur, offset);
        return cur;
      }
      case TermKind::Tensor: {
        State cur = s;
        std::size_t off = offset;
        for (const auto& p : t->parts()) {
          cur = apply(p, cur, off);
          off += static_cast<std::size_t>(p->target());
        }
        return cur;
      }
      default:
        break;
    }
    State out;
    const auto src = static_cast<std::size_t>(t->source());
    for (const auto& [idx, v] : s) {
      std::vector<int> local(idx.begin() + static_cast<long>(offset), idx.begin() + static_cast<long>(offset + src));
      for (const auto& [img, w] : gen(t->kind(), local)) {
        std::vector<int> key(idx.begin(), idx.begin() + static_cast<long>(offset));
        key.insert(key.end(), img.begin(), img.end());
        key.insert(key.end(), idx.begin() + static_cast<long>(offset + src), idx.end());
        out[key] += v * w;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

  // f must have rational coefficients after specialization at (7/3, 26).
  State apply(const Combo& f, const std::vector<int>& input) const {
    State out;
    for (const auto& [c, t] : f.entries()) {
      const Rational k = c.specialize(Rational(7, 3), Rational(26));
      for (const auto& [idx, v] : apply(t, State{{input, Rational(1)}})) out[idx] += k * v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

 private:
  std::vector<RatVector> merge_;
  std::vector<RatVector> dual_;
  RatMatrix cap_;
};

// Column of phi_tensor(f) for one input tuple, as a State over output tuples.
inline State column(const SparseTensor& t, int outputs, const std::vector<int>& input) {
  State out;
  for (const auto& [key, v] : t.entries()) {
    bool match = true;
    for (std::size_t i = 0; i < input.size(); ++i)
      match = match && leg_of(key, outputs + static_cast<int>(i)) == input[i];
    if (!match) continue;
    std::vector<int> idx(static_cast<std::size_t>(outputs));
    for (int i = 0; i < outputs; ++i) idx[static_cast<std::size_t>(i)] = leg_of(key, i);
    out[idx] += v;
  }
  return out;
}

inline State to_state(const SparseTensor& t) {
  State out;
  for (const auto& [key, v] : t.entries()) out[unpack_index(key, t.rank())] = v;
  return out;
}

// Small random rationals with numerators in [-range, range] and denominators in [1, den].
inline Rational random_rational(std::mt19937_64& rng, int range = 5, int den = 3) {
  std::uniform_int_distribution<int> n(-range, range), d(1, den);
  return Rational(n(rng), d(rng));
}

inline Oct random_oct(std::mt19937_64& rng) {
  Oct x;
  for (int k = 0; k < 8; ++k) x[k] = random_rational(rng);
  return x;
}

inline Alb random_alb(std::mt19937_64& rng) {
  Alb a;
  for (auto& l : a.diag) l = random_rational(rng);
  for (auto& o : a.off) o = random_oct(rng);
  return a;
}

inline Alb random_traceless(std::mt19937_64& rng) { return project_v(random_alb(rng)); }

}  // namespace f4::testing
