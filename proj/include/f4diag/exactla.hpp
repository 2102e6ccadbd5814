#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "f4diag/rational.hpp"

namespace f4 {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Reduced row echelon form over an exact field. Works for any scalar with
// field arithmetic, is_zero() and a pivot_cost() overload.
template <typename Scalar>
struct Echelon {
  DenseMatrix<Scalar> rref;
  std::vector<Eigen::Index> pivot_cols;
};

template <typename Derived>
Echelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out;
  DenseMatrix<Scalar>& m = out.rref;
  m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    // cheapest nonzero entry in the column keeps coefficient growth down
    Eigen::Index best = -1;
    std::size_t best_cost = 0;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      std::size_t cost = pivot_cost(m(i, c));
      if (best < 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best < 0) continue;
    if (best != r) m.row(best).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(row_reduce(m).pivot_cols.size());
}

template <typename Derived>
std::vector<DenseVector<typename Derived::Scalar>> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_reduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<DenseVector<Scalar>> basis;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    DenseVector<Scalar> v = DenseVector<Scalar>::Zero(cols);
    v(f) = Scalar(1);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
      v(ech.pivot_cols[i]) = -ech.rref(static_cast<Eigen::Index>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Any exact solution of m x = b, or nullopt when b is outside the column space.
template <typename DerivedM, typename DerivedB>
std::optional<DenseVector<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedM::Scalar;
  DenseMatrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const auto ech = row_reduce(aug);
  DenseVector<Scalar> x = DenseVector<Scalar>::Zero(m.cols());
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    const Eigen::Index c = ech.pivot_cols[i];
    if (c == m.cols()) return std::nullopt;
    x(c) = ech.rref(static_cast<Eigen::Index>(i), m.cols());
  }
  return x;
}

template <typename Derived>
std::optional<DenseMatrix<typename Derived::Scalar>> invert(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  if (m.cols() != n) return std::nullopt;
  DenseMatrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = DenseMatrix<Scalar>::Identity(n, n);
  const auto ech = row_reduce(aug);
  if (static_cast<Eigen::Index>(ech.pivot_cols.size()) < n || ech.pivot_cols[static_cast<std::size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return DenseMatrix<Scalar>(ech.rref.rightCols(n));
}

using SparseRow = std::vector<std::pair<int, Rational>>;

// Incremental reduced echelon form over Q for tall sparse systems. Rows are
// kept fully reduced, so a new row only ever touches free columns.
class SparseEchelon {
 public:
  explicit SparseEchelon(int cols);

  // Reduces the row against the stored pivots; returns true if it was independent.
  bool add_row(const SparseRow& row);
  // Residual of a row after reduction; empty iff the row lies in the span.
  SparseRow reduce(const SparseRow& row) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  std::vector<RatVector> nullspace() const;

 private:
  void reduce_dense(std::vector<Rational>& acc) const;

  int cols_;
  std::vector<int> pivot_row_of_col_;
  std::vector<int> pivot_col_of_row_;
  std::vector<SparseRow> rows_;
};

}  // namespace f4
