#include "dirac/linalg.hpp"

#include "dirac/errors.hpp"

#include <numeric>

namespace dirac {

namespace {

bool nonzero_at(const Expr& e, std::span<const Rational> p) {
  if (e.is_zero()) return false;
  const Rational d = e.den().eval(p);
  if (d == 0) return false;
  return e.num().eval(p) != 0;
}

void record(std::vector<Polynomial>& dens, const Expr& pivot) {
  if (pivot.num().is_constant()) return;
  const Polynomial m = pivot.num().monic();
  for (const auto& d : dens)
    if (d == m) return;
  dens.push_back(m);
}

// Row reduction of a (augmented by t) using pivots nonvanishing at p.
// Returns the number of pivots; rows [rank, rows) of `a` hold the Schur
// complement left over.
int reduce_at(ExprMatrix& a, ExprMatrix& t, std::span<const Rational> p,
              std::vector<Polynomial>& dens) {
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i) {
      if (nonzero_at(a(i, col), p)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    t.row(pivot).swap(t.row(row));
    const Expr piv = a(row, col);
    record(dens, piv);
    const Expr inv = Expr(1) / piv;
    a.row(row) *= inv;
    t.row(row) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Expr f = a(i, col);
      a.row(i) -= f * a.row(row);
      t.row(i) -= f * t.row(row);
    }
    ++row;
  }
  return static_cast<int>(row);
}

}  // namespace

Expr determinant(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  ExprMatrix a = m;
  Expr det(1);
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = k; i < n; ++i) {
      if (!a(i, k).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return Expr(0);
    if (pivot != k) {
      a.row(pivot).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    const Expr inv = Expr(1) / a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Expr f = a(i, k) * inv;
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

Expr laplace_determinant(const ExprMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  if (n == 0) return Expr(1);
  if (n == 1) return m(0, 0);
  Expr det;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    ExprMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Expr term = m(0, j) * laplace_determinant(minor);
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

ExprMatrix adjugate_inverse(const ExprMatrix& m) {
  const Eigen::Index n = m.rows();
  const Expr det = laplace_determinant(m);
  if (det.is_zero()) throw SingularMatrix("matrix is singular as a function");
  ExprMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ExprMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c)
          if (c != j) minor(rr, cc++) = m(r, c);
        ++rr;
      }
      const Expr cof = laplace_determinant(minor);
      // inverse(j, i) = cofactor(i, j) / det
      inv(j, i) = ((i + j) % 2 == 0 ? cof : -cof) / det;
    }
  }
  return inv;
}

Inverse mat_inverse(const ExprMatrix& m, std::span<const Rational> p) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (m(i, j).den().eval(p) == 0)
        throw DomainError("matrix entry has a pole at " + to_string(Point(p.begin(), p.end())));

  ExprMatrix a = m;
  ExprMatrix b = ExprMatrix::Identity(n, n);
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Inverse out;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = -1;
    Eigen::Index pc = -1;
    for (Eigen::Index i = k; i < n && pr < 0; ++i) {
      for (Eigen::Index j = k; j < n; ++j) {
        if (nonzero_at(a(i, j), p)) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr < 0) {
      if (determinant(m).is_zero()) throw SingularMatrix("matrix is singular as a function");
      throw SingularAtPoint("matrix is invertible generically but singular at " +
                            to_string(Point(p.begin(), p.end())));
    }
    a.row(pr).swap(a.row(k));
    b.row(pr).swap(b.row(k));
    if (pc != k) {
      a.col(pc).swap(a.col(k));
      std::swap(perm[pc], perm[k]);
    }
    const Expr piv = a(k, k);
    record(out.denominators, piv);
    const Expr inv = Expr(1) / piv;
    a.row(k) *= inv;
    b.row(k) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Expr f = a(i, k);
      a.row(i) -= f * a.row(k);
      b.row(i) -= f * b.row(k);
    }
  }
  // b * m[:, perm] == I, hence inverse row perm[k] is row k of b.
  out.value.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) out.value.row(perm[k]) = b.row(k);
  return out;
}

int generic_rank(const ExprMatrix& m) {
  ExprMatrix a = m;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    const Expr inv = Expr(1) / a(row, col);
    for (Eigen::Index i = row + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const Expr f = a(i, col) * inv;
      a.row(i) -= f * a.row(row);
    }
    ++row;
  }
  return static_cast<int>(row);
}

LeftKernel left_kernel_at(const ExprMatrix& m, std::span<const Rational> p) {
  ExprMatrix a = m;
  ExprMatrix t = ExprMatrix::Identity(m.rows(), m.rows());
  LeftKernel out;
  const int rank = reduce_at(a, t, p, out.denominators);
  out.generic_rank = generic_rank(m);
  out.rank_at_point_drops = out.generic_rank > rank;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = rank; i < a.rows(); ++i)
    if (is_zero(ExprMatrix(a.row(i)))) rows.push_back(i);
  out.basis.resize(static_cast<Eigen::Index>(rows.size()), m.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) out.basis.row(k) = t.row(rows[k]);
  return out;
}

RowBasis row_basis_at(const ExprMatrix& m, std::span<const Rational> p) {
  ExprMatrix a = m;
  ExprMatrix t = ExprMatrix::Identity(m.rows(), m.rows());
  RowBasis out;
  const int rank = reduce_at(a, t, p, out.denominators);
  out.rank_at_point_drops = generic_rank(m) > rank;
  out.rows = a.topRows(rank);
  return out;
}

}  // namespace dirac
