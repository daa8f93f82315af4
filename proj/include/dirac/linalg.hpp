#pragma once

#include "dirac/expr.hpp"

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

namespace dirac {

/// Result of an exact row reduction: transform * input == reduced, with
/// `reduced` in reduced row echelon form.
template <typename Scalar>
struct RowEchelon {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> transform;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reduced;
  std::vector<int> pivot_columns;
  int rank() const { return static_cast<int>(pivot_columns.size()); }
};

/// Gauss-Jordan elimination over an exact field. In each column the pivot is
/// the first remaining row (smallest index) with a nonzero entry.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  RowEchelon<Scalar> out;
  Mat a = input;
  Mat t = Mat::Identity(a.rows(), a.rows());
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i) {
      if (a(i, col) != Scalar(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    t.row(pivot).swap(t.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    a.row(row) *= inv;
    t.row(row) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == Scalar(0)) continue;
      const Scalar f = a(i, col);
      a.row(i) -= f * a.row(row);
      t.row(i) -= f * t.row(row);
    }
    out.pivot_columns.push_back(static_cast<int>(col));
    ++row;
  }
  out.transform = std::move(t);
  out.reduced = std::move(a);
  return out;
}

/// Exact rank over Q (or any exact field scalar).
template <typename Derived>
int exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return row_echelon(m).rank();
}

/// Inverse over the rational-function field together with the pivot
/// numerators that were divided by (all nonvanishing at the requested point).
struct Inverse {
  ExprMatrix value;
  std::vector<Polynomial> denominators;
};

/// Gauss-Jordan elimination with full pivoting restricted to entries that are
/// nonzero at p. Throws SingularMatrix if det(m) vanishes identically,
/// SingularAtPoint if det(m)(p) == 0 only.
Inverse mat_inverse(const ExprMatrix& m, std::span<const Rational> p);

/// Independent route: adjugate divided by the Laplace-expansion determinant.
ExprMatrix adjugate_inverse(const ExprMatrix& m);

/// Determinant by cofactor expansion (intended for small matrices).
Expr laplace_determinant(const ExprMatrix& m);

/// Determinant by elimination over the rational-function field.
Expr determinant(const ExprMatrix& m);

/// Rank over the rational-function field (generic rank).
int generic_rank(const ExprMatrix& m);

/// Basis of {λ : λᵀ m = 0} over the rational-function field, computed with
/// pivots nonvanishing at p. `rank_at_point_drops` is set when the generic
/// rank exceeds the rank attainable with pivots nonzero at p (the rank of m
/// jumps at p).
struct LeftKernel {
  ExprMatrix basis;  // rows are kernel vectors
  std::vector<Polynomial> denominators;
  int generic_rank = 0;
  bool rank_at_point_drops = false;
};
LeftKernel left_kernel_at(const ExprMatrix& m, std::span<const Rational> p);

/// Rows forming a basis of the row space, obtained by elimination with pivots
/// nonvanishing at p; `rank_at_point_drops` as for left_kernel_at.
struct RowBasis {
  ExprMatrix rows;
  std::vector<Polynomial> denominators;
  bool rank_at_point_drops = false;
};
RowBasis row_basis_at(const ExprMatrix& m, std::span<const Rational> p);

}  // namespace dirac
