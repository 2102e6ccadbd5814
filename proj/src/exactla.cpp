#include "f4diag/exactla.hpp"

#include <algorithm>
#include <stdexcept>

namespace f4 {

SparseEchelon::SparseEchelon(int cols) : cols_(cols), pivot_row_of_col_(static_cast<std::size_t>(cols), -1) {}

void SparseEchelon::reduce_dense(std::vector<Rational>& acc) const {
  for (int c = 0; c < cols_; ++c) {
    const int p = pivot_row_of_col_[static_cast<std::size_t>(c)];
    if (p < 0 || acc[static_cast<std::size_t>(c)].is_zero()) continue;
    const Rational f = acc[static_cast<std::size_t>(c)];
    for (const auto& [j, v] : rows_[static_cast<std::size_t>(p)]) acc[static_cast<std::size_t>(j)].add_product(-f, v);
  }
}

SparseRow SparseEchelon::reduce(const SparseRow& row) const {
  std::vector<Rational> acc(static_cast<std::size_t>(cols_));
  for (const auto& [j, v] : row) {
    if (j < 0 || j >= cols_) throw std::out_of_range("SparseEchelon: column out of range");
    acc[static_cast<std::size_t>(j)] += v;
  }
  reduce_dense(acc);
  SparseRow out;
  for (int j = 0; j < cols_; ++j)
    if (!acc[static_cast<std::size_t>(j)].is_zero()) out.emplace_back(j, acc[static_cast<std::size_t>(j)]);
  return out;
}

bool SparseEchelon::add_row(const SparseRow& row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  const int pc = r.front().first;
  const Rational inv = r.front().second.inverse();
  for (auto& e : r) e.second *= inv;

  // clear the new pivot column from every stored row
  for (auto& stored : rows_) {
    auto it = std::lower_bound(stored.begin(), stored.end(), pc,
                               [](const auto& e, int c) { return e.first < c; });
    if (it == stored.end() || it->first != pc) continue;
    const Rational f = it->second;
    SparseRow merged;
    merged.reserve(stored.size() + r.size());
    auto a = stored.begin();
    auto b = r.begin();
    while (a != stored.end() || b != r.end()) {
      if (b == r.end() || (a != stored.end() && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == stored.end() || b->first < a->first) {
        merged.emplace_back(b->first, -f * b->second);
        ++b;
      } else {
        Rational v = a->second;
        v.add_product(-f, b->second);
        if (!v.is_zero()) merged.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    stored = std::move(merged);
  }
  pivot_row_of_col_[static_cast<std::size_t>(pc)] = rank();
  pivot_col_of_row_.push_back(pc);
  rows_.push_back(std::move(r));
  return true;
}

std::vector<RatVector> SparseEchelon::nullspace() const {
  std::vector<RatVector> basis;
  for (int f = 0; f < cols_; ++f) {
    if (pivot_row_of_col_[static_cast<std::size_t>(f)] >= 0) continue;
    RatVector v = RatVector::Zero(cols_);
    v(f) = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, int c) { return e.first < c; });
      if (it != row.end() && it->first == f) v(pivot_col_of_row_[i]) = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace f4
