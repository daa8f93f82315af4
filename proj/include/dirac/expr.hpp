#pragma once

#include "dirac/polynomial.hpp"
#include "dirac/rational.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// Ordered coordinate names, optionally partitioned into leaf directions
/// (x) and transverse directions (y).
class Chart {
 public:
  struct Split {
    std::vector<int> x;  // chart indices of x_1..x_r
    std::vector<int> y;  // chart indices of y_1..y_s
  };

  Chart() = default;
  explicit Chart(std::vector<std::string> coords);
  Chart(std::vector<std::string> coords, const std::vector<std::string>& x,
        const std::vector<std::string>& y);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& names() const { return coords_; }
  const std::string& name(int i) const { return coords_.at(i); }
  std::optional<int> index_of(std::string_view name) const;
  int require_index(std::string_view name) const;

  bool has_split() const { return split_.has_value(); }
  const Split& split() const;
  int r() const { return has_split() ? static_cast<int>(split_->x.size()) : 0; }
  int s() const { return has_split() ? static_cast<int>(split_->y.size()) : dim(); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.coords_ == b.coords_ && a.split_.has_value() == b.split_.has_value() &&
           (!a.split_ || (a.split_->x == b.split_->x && a.split_->y == b.split_->y));
  }

 private:
  std::vector<std::string> coords_;
  std::optional<Split> split_;
};

/// Rational function with exact rational coefficients in the coordinates of
/// a chart (variables are chart indices). Always canonical: the numerator and
/// denominator are coprime, the denominator has leading coefficient 1, and
/// zero is 0/1. Equality of values is therefore equality of functions.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(int c) : num_(c), den_(1) {}                 // NOLINT
  Expr(const Rational& c) : num_(c), den_(1) {}     // NOLINT
  Expr(const Polynomial& p) : num_(p), den_(1) {}   // NOLINT
  static Expr variable(int index) { return Expr(Polynomial::variable(index)); }
  /// Builds num/den and canonicalizes; throws DivisionByZero if den == 0.
  static Expr fraction(const Polynomial& num, const Polynomial& den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool depends_on(int var) const { return num_.depends_on(var) || den_.depends_on(var); }

  Expr& operator+=(const Expr& b);
  Expr& operator-=(const Expr& b);
  Expr& operator*=(const Expr& b);
  Expr& operator/=(const Expr& b);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator/(Expr a, const Expr& b) { return a /= b; }
  Expr operator-() const;
  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

Expr pow(const Expr& base, unsigned exponent);
Expr partial(const Expr& e, int var);

/// Exact value at p; throws DomainError when the denominator vanishes there.
Rational eval(const Expr& e, std::span<const Rational> p);
/// Floating-point value (may be inf/nan near poles; never throws for that).
double eval_double(const Expr& e, std::span<const double> p);

/// Substitutes constants for some coordinates and renumbers the rest (see
/// Polynomial::restrict). Throws DomainError if the denominator restricts to 0.
Expr restrict(const Expr& e, std::span<const std::optional<Rational>> values,
              std::span<const int> new_index);

/// Parses the expression grammar against the chart's coordinate names.
Expr parse_expr(std::string_view text, const Chart& chart);
std::string to_string(const Expr& e, const Chart& chart);
/// Debug output with coordinates named c1, c2, ...
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace dirac

namespace Eigen {
template <>
struct NumTraits<dirac::Expr> : GenericNumTraits<dirac::Expr> {
  using Real = dirac::Expr;
  using NonInteger = dirac::Expr;
  using Nested = dirac::Expr;
  using Literal = dirac::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
  static inline int digits10() { return 0; }
  static inline dirac::Expr epsilon() { return dirac::Expr(0); }
  static inline dirac::Expr dummy_precision() { return dirac::Expr(0); }
};
}  // namespace Eigen

namespace dirac {
using ExprMatrix = Eigen::Matrix<Expr, Eigen::Dynamic, Eigen::Dynamic>;
using ExprVector = Eigen::Matrix<Expr, Eigen::Dynamic, 1>;

/// Entrywise evaluation at p.
RationalMatrix eval(const ExprMatrix& m, std::span<const Rational> p);
Eigen::MatrixXd eval_double(const ExprMatrix& m, std::span<const double> p);

bool is_zero(const ExprMatrix& m);
}  // namespace dirac
