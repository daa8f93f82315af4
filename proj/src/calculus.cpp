#include "dirac/calculus.hpp"

#include "dirac/errors.hpp"

#include <algorithm>

namespace dirac {

VectorField VectorField::coordinate(int n, int i) {
  VectorField v = zero(n);
  v.c(i) = Expr(1);
  return v;
}

OneForm OneForm::coordinate(int n, int i) {
  OneForm w = zero(n);
  w.c(i) = Expr(1);
  return w;
}

// ---------------------------------------------------------------------------
// Skew tensors

template <class Tag>
Skew2<Tag> Skew2<Tag>::from_matrix(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("skew tensor matrix must be square");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (!(m(i, j) == -m(j, i)))
        throw PreconditionError("component matrix is not skew-symmetric at (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
  Skew2 out;
  out.m_ = m;
  return out;
}

template <class Tag>
void Skew2<Tag>::set(int i, int j, const Expr& v) {
  if (i == j) {
    if (!v.is_zero()) throw PreconditionError("diagonal component of a skew tensor must be 0");
    return;
  }
  m_(i, j) = v;
  m_(j, i) = -v;
}

template class Skew2<FormTag>;
template class Skew2<MultivectorTag>;

namespace {

// Sorts (i, j, k) ascending; returns the permutation sign, or 0 on a repeat.
int sort3(std::array<int, 3>& idx) {
  int sign = 1;
  for (int pass = 0; pass < 2; ++pass)
    for (int a = 0; a < 2; ++a)
      if (idx[a] > idx[a + 1]) {
        std::swap(idx[a], idx[a + 1]);
        sign = -sign;
      }
  if (idx[0] == idx[1] || idx[1] == idx[2]) return 0;
  return sign;
}

}  // namespace

template <class Tag>
Expr Skew3<Tag>::operator()(int i, int j, int k) const {
  std::array<int, 3> idx{i, j, k};
  const int sign = sort3(idx);
  if (sign == 0) return Expr();
  const auto it = c_.find(idx);
  if (it == c_.end()) return Expr();
  return sign > 0 ? it->second : -it->second;
}

template <class Tag>
void Skew3<Tag>::set(int i, int j, int k, const Expr& v) {
  std::array<int, 3> idx{i, j, k};
  const int sign = sort3(idx);
  if (sign == 0) {
    if (!v.is_zero()) throw PreconditionError("repeated index in a skew 3-tensor");
    return;
  }
  if (v.is_zero()) {
    c_.erase(idx);
  } else {
    c_[idx] = sign > 0 ? v : -v;
  }
}

template class Skew3<FormTag>;
template class Skew3<MultivectorTag>;

// ---------------------------------------------------------------------------
// Calculus

Expr contract(const OneForm& w, const VectorField& x) {
  Expr s;
  for (int i = 0; i < x.dim(); ++i)
    if (!x.c(i).is_zero() && !w.c(i).is_zero()) s += x.c(i) * w.c(i);
  return s;
}

Expr derivative(const VectorField& x, const Expr& f) {
  Expr s;
  for (int i = 0; i < x.dim(); ++i)
    if (!x.c(i).is_zero() && f.depends_on(i)) s += x.c(i) * partial(f, i);
  return s;
}

Expr pairing(const Section& a, const Section& b) {
  return Rational(1, 2) * (contract(a.w, b.v) + contract(b.w, a.v));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  const int n = x.dim();
  VectorField out = VectorField::zero(n);
  for (int k = 0; k < n; ++k) out.c(k) = derivative(x, y.c(k)) - derivative(y, x.c(k));
  return out;
}

OneForm exterior_d(const Expr& f, int n) {
  OneForm out = OneForm::zero(n);
  for (int i = 0; i < n; ++i) out.c(i) = partial(f, i);
  return out;
}

TwoForm exterior_d(const OneForm& w) {
  const int n = w.dim();
  TwoForm out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.set(i, j, partial(w.c(j), i) - partial(w.c(i), j));
  return out;
}

ThreeForm exterior_d(const TwoForm& w) {
  const int n = w.dim();
  ThreeForm out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        out.set(i, j, k, partial(w(j, k), i) - partial(w(i, k), j) + partial(w(i, j), k));
  return out;
}

Expr interior(const VectorField& x, const OneForm& w) { return contract(w, x); }

OneForm interior(const VectorField& x, const TwoForm& w) {
  const int n = w.dim();
  OneForm out = OneForm::zero(n);
  for (int j = 0; j < n; ++j) {
    Expr s;
    for (int i = 0; i < n; ++i)
      if (!x.c(i).is_zero() && !w(i, j).is_zero()) s += x.c(i) * w(i, j);
    out.c(j) = s;
  }
  return out;
}

TwoForm interior(const VectorField& x, const ThreeForm& w) {
  const int n = w.dim();
  TwoForm out(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Expr s;
      for (int i = 0; i < n; ++i)
        if (!x.c(i).is_zero()) s += x.c(i) * w(i, j, k);
      out.set(j, k, s);
    }
  return out;
}

Expr evaluate(const TwoForm& w, const VectorField& x, const VectorField& y) {
  return contract(interior(x, w), y);
}

Expr evaluate(const Bivector& pi, const OneForm& a, const OneForm& b) {
  return contract(b, sharp(pi, a));
}

OneForm lie_derivative(const VectorField& x, const OneForm& w) {
  return exterior_d(interior(x, w), x.dim()) + interior(x, exterior_d(w));
}

Section courant_bracket(const Section& a, const Section& b) {
  return {lie_bracket(a.v, b.v), lie_derivative(a.v, b.w) - interior(b.v, exterior_d(a.w))};
}

VectorField sharp(const Bivector& pi, const OneForm& a) {
  const int n = pi.dim();
  VectorField out = VectorField::zero(n);
  for (int j = 0; j < n; ++j) {
    Expr s;
    for (int i = 0; i < n; ++i)
      if (!a.c(i).is_zero() && !pi(i, j).is_zero()) s += a.c(i) * pi(i, j);
    out.c(j) = s;
  }
  return out;
}

Bivector schouten_xv(const VectorField& x, const Bivector& pi) {
  const int n = pi.dim();
  std::vector<std::vector<Expr>> dx(n, std::vector<Expr>(n));
  for (int a = 0; a < n; ++a)
    for (int l = 0; l < n; ++l) dx[a][l] = partial(x.c(a), l);
  Bivector out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Expr s = derivative(x, pi(a, b));
      for (int l = 0; l < n; ++l) {
        if (!dx[a][l].is_zero()) s -= pi(l, b) * dx[a][l];
        if (!dx[b][l].is_zero()) s -= pi(a, l) * dx[b][l];
      }
      out.set(a, b, s);
    }
  return out;
}

Expr jacobiator(const Bivector& pi, int a, int b, int c) {
  const int n = pi.dim();
  auto term = [&](int p, int q, int r) {
    Expr s;
    for (int l = 0; l < n; ++l) {
      if (pi(l, r).is_zero()) continue;
      const Expr d = partial(pi(p, q), l);
      if (!d.is_zero()) s += d * pi(l, r);
    }
    return s;
  };
  return term(a, b, c) + term(b, c, a) + term(c, a, b);
}

Trivector schouten_square(const Bivector& pi) {
  const int n = pi.dim();
  Trivector out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) out.set(a, b, c, Expr(2) * jacobiator(pi, a, b, c));
  return out;
}

bool is_poisson(const Bivector& pi) { return schouten_square(pi).is_zero(); }

}  // namespace dirac
