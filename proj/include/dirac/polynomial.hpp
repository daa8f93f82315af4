#pragma once

#include "dirac/rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dirac {

/// Exponent vector indexed by chart coordinate. Trailing zeros are never
/// stored, so equal monomials have equal representations regardless of the
/// chart dimension they were built in.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial variable(int index, int power = 1);

  int operator[](int var) const {
    return var < static_cast<int>(exps_.size()) ? exps_[var] : 0;
  }
  int size() const { return static_cast<int>(exps_.size()); }
  int total_degree() const { return degree_; }
  bool is_one() const { return exps_.empty(); }
  const std::vector<int>& exponents() const { return exps_; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other, *this).
  Monomial operator/(const Monomial& other) const;
  Monomial with_exponent(int var, int power) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded lexicographic order (x_0 > x_1 > ...); the map comparator sorts
/// descending so the leading term comes first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(int index);
  static Polynomial term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Valid only when is_constant().
  Rational constant_value() const;
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  int total_degree() const;
  int degree_in(int var) const;
  /// Largest variable index occurring, or -1 for constants.
  int max_variable() const;
  bool depends_on(int var) const { return degree_in(var) > 0; }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial mul_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial partial(int var) const;

  /// Coefficient of var^power, as a polynomial free of var.
  Polynomial coefficient_in(int var, int power) const;

  Rational eval(std::span<const Rational> point) const;
  double eval_double(std::span<const double> point) const;

  /// Substitutes values for some variables (std::nullopt keeps the variable)
  /// and renames the remaining variables through `new_index` (-1 = dropped).
  Polynomial restrict(std::span<const std::optional<Rational>> values,
                      std::span<const int> new_index) const;

  /// Renames variables: variable i becomes new_index[i].
  Polynomial reindex(std::span<const int> new_index) const;

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Exact division; throws std::logic_error if `divisor` does not divide
/// `dividend`.
Polynomial exact_divide(const Polynomial& dividend, const Polynomial& divisor);

/// Pseudo-remainder of a by b with respect to `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var);

/// Monic greatest common divisor over Q (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Monic gcd of the coefficients of p viewed as a polynomial in `var`.
Polynomial content_in(const Polynomial& p, int var);

}  // namespace dirac
