#pragma once

#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/leaves.hpp"
#include "dirac/linalg.hpp"
#include "dirac/oracle.hpp"
#include "dirac/transverse.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace dirac::test {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline DiracFrame load_frame(const std::string& name) {
  Structure st = load_structure(fixture(name));
  if (st.frame) return *st.frame;
  return reconstruct(*st.geomdata);
}

inline Expr E(const std::string& text, const Chart& chart) { return parse_expr(text, chart); }

inline ExprMatrix M(std::initializer_list<std::initializer_list<const char*>> rows, const Chart& chart) {
  ExprMatrix m(static_cast<Eigen::Index>(rows.size()),
               static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const char* e : row) m(i, j++) = parse_expr(e, chart);
    ++i;
  }
  return m;
}

inline Point P(std::initializer_list<Rational> v) { return Point(v); }

/// Small random polynomials and rational functions.
struct Random {
  std::mt19937_64 rng;
  explicit Random(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational rational(int bound = 3) { return Rational(integer(-bound, bound), integer(1, 3)); }

  Polynomial polynomial(int n, int terms = 3, int max_degree = 2) {
    Polynomial p;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(n, 0);
      int budget = integer(0, max_degree);
      while (budget-- > 0) ++e[integer(0, n - 1)];
      p += Polynomial::term(Monomial(e), rational());
    }
    return p;
  }

  /// Denominator with a nonzero constant term, so the origin stays in the domain.
  Polynomial denominator(int n) {
    for (;;) {
      const Polynomial d = polynomial(n, 2, 1) + Polynomial(Rational(integer(1, 3)));
      if (d.eval(Point(n, Rational(0))) != 0) return d;
    }
  }

  Expr expr(int n, bool polynomial_only = false) {
    const Polynomial num = polynomial(n);
    if (polynomial_only || integer(0, 2) == 0) return Expr(num);
    return Expr::fraction(num, denominator(n));
  }

  VectorField vector_field(int n) {
    VectorField x = VectorField::zero(n);
    for (int i = 0; i < n; ++i) x.c(i) = expr(n, true);
    return x;
  }

  OneForm one_form(int n) {
    OneForm w = OneForm::zero(n);
    for (int i = 0; i < n; ++i) w.c(i) = expr(n, true);
    return w;
  }

  Section section(int n) { return {vector_field(n), one_form(n)}; }

  TwoForm two_form(int n, int max_degree = 2) {
    TwoForm w(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) w.set(i, j, Expr(polynomial(n, 2, max_degree)));
    return w;
  }

  Bivector bivector(int n, int max_degree = 1) {
    Bivector b(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) b.set(i, j, Expr(polynomial(n, 2, max_degree)));
    return b;
  }

  Point point(int n, int bound = 5) {
    Point p(n);
    for (auto& c : p) c = rational(bound);
    return p;
  }
};

inline Chart chart_of(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i + 1));
  return Chart(names);
}

}  // namespace dirac::test
