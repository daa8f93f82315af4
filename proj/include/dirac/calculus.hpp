#pragma once

#include "dirac/expr.hpp"

#include <array>
#include <map>

namespace dirac {

/// Vector field: components against the coordinate fields ∂/∂c.
struct VectorField {
  ExprVector c;

  static VectorField zero(int n) { return {ExprVector::Zero(n)}; }
  /// The coordinate field ∂/∂c_i.
  static VectorField coordinate(int n, int i);
  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const { return dirac::is_zero(ExprMatrix(c)); }

  VectorField& operator+=(const VectorField& o) { c += o.c; return *this; }
  VectorField& operator-=(const VectorField& o) { c -= o.c; return *this; }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Expr& f, const VectorField& v) { return {f * v.c}; }
  VectorField operator-() const { return {-c}; }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.c == b.c; }
};

/// One-form: components against the coordinate differentials dc.
struct OneForm {
  ExprVector c;

  static OneForm zero(int n) { return {ExprVector::Zero(n)}; }
  /// The coordinate differential dc_i.
  static OneForm coordinate(int n, int i);
  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const { return dirac::is_zero(ExprMatrix(c)); }

  OneForm& operator+=(const OneForm& o) { c += o.c; return *this; }
  OneForm& operator-=(const OneForm& o) { c -= o.c; return *this; }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const Expr& f, const OneForm& w) { return {f * w.c}; }
  OneForm operator-() const { return {-c}; }
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.c == b.c; }
};

struct FormTag {};
struct MultivectorTag {};

/// Skew 2-tensor stored as a skew-symmetric matrix; entry (i, j) is the
/// value on the i-th and j-th coordinate (co)vectors. Only set() writes, and
/// it writes both triangles, so skewness holds by construction.
template <class Tag>
class Skew2 {
 public:
  Skew2() = default;
  explicit Skew2(int n) : m_(ExprMatrix::Zero(n, n)) {}
  /// Throws PreconditionError unless m is square and skew-symmetric.
  static Skew2 from_matrix(const ExprMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Expr& operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, const Expr& v);
  void add(int i, int j, const Expr& v) { set(i, j, m_(i, j) + v); }
  const ExprMatrix& matrix() const { return m_; }
  bool is_zero() const { return dirac::is_zero(m_); }

  Skew2& operator+=(const Skew2& o) { m_ += o.m_; return *this; }
  friend Skew2 operator+(Skew2 a, const Skew2& b) { return a += b; }
  friend bool operator==(const Skew2& a, const Skew2& b) { return a.m_ == b.m_; }

 private:
  ExprMatrix m_;
};

/// Skew 3-tensor stored by strictly increasing index triples.
template <class Tag>
class Skew3 {
 public:
  Skew3() = default;
  explicit Skew3(int n) : n_(n) {}

  int dim() const { return n_; }
  /// Value for any index order (sign of the sorting permutation applied).
  Expr operator()(int i, int j, int k) const;
  void set(int i, int j, int k, const Expr& v);
  bool is_zero() const { return c_.empty(); }
  /// Nonzero components, keyed by i < j < k.
  const std::map<std::array<int, 3>, Expr>& components() const { return c_; }

 private:
  int n_ = 0;
  std::map<std::array<int, 3>, Expr> c_;
};

using TwoForm = Skew2<FormTag>;
using Bivector = Skew2<MultivectorTag>;
using ThreeForm = Skew3<FormTag>;
using Trivector = Skew3<MultivectorTag>;

/// Section of TM ⊕ T*M.
struct Section {
  VectorField v;
  OneForm w;

  static Section zero(int n) { return {VectorField::zero(n), OneForm::zero(n)}; }
  int dim() const { return v.dim(); }
  bool is_zero() const { return v.is_zero() && w.is_zero(); }
  Section& operator+=(const Section& o) { v += o.v; w += o.w; return *this; }
  Section& operator-=(const Section& o) { v -= o.v; w -= o.w; return *this; }
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Expr& f, const Section& s) { return {f * s.v, f * s.w}; }
  friend bool operator==(const Section& a, const Section& b) { return a.v == b.v && a.w == b.w; }
};

/// w(X).
Expr contract(const OneForm& w, const VectorField& x);
/// X·f, the derivative of f along X.
Expr derivative(const VectorField& x, const Expr& f);

/// ½(i_{X₂}α₁ + i_{X₁}α₂).
Expr pairing(const Section& a, const Section& b);

VectorField lie_bracket(const VectorField& x, const VectorField& y);

OneForm exterior_d(const Expr& f, int n);
TwoForm exterior_d(const OneForm& w);
ThreeForm exterior_d(const TwoForm& w);

Expr interior(const VectorField& x, const OneForm& w);
OneForm interior(const VectorField& x, const TwoForm& w);
TwoForm interior(const VectorField& x, const ThreeForm& w);

/// ω(X, Y).
Expr evaluate(const TwoForm& w, const VectorField& x, const VectorField& y);
/// π(α, β).
Expr evaluate(const Bivector& pi, const OneForm& a, const OneForm& b);

/// L_X ω = d(i_X ω) + i_X dω.
OneForm lie_derivative(const VectorField& x, const OneForm& w);

/// ([X₁, X₂], L_{X₁}α₂ − i_{X₂}dα₁), the non-skew form.
Section courant_bracket(const Section& a, const Section& b);

/// π♯α, with the convention ⟨β, π♯α⟩ = π(α, β).
VectorField sharp(const Bivector& pi, const OneForm& a);

/// [X, π] = L_X π.
Bivector schouten_xv(const VectorField& x, const Bivector& pi);

/// {{x_a,x_b},x_c} + {{x_b,x_c},x_a} + {{x_c,x_a},x_b} with {f,g} = π(df,dg).
Expr jacobiator(const Bivector& pi, int a, int b, int c);

/// [π, π] reported componentwise as 2·jacobiator on increasing triples.
Trivector schouten_square(const Bivector& pi);

/// True iff every coordinate jacobiator vanishes identically.
bool is_poisson(const Bivector& pi);

}  // namespace dirac
