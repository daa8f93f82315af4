#include "dirac/expr.hpp"

#include "dirac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>

namespace dirac {

// ---------------------------------------------------------------------------
// Chart

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Chart::Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!is_identifier(c)) throw PreconditionError("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw PreconditionError("duplicate coordinate name '" + c + "'");
  }
}

Chart::Chart(std::vector<std::string> coords, const std::vector<std::string>& x,
             const std::vector<std::string>& y)
    : Chart(std::move(coords)) {
  Split split;
  std::vector<bool> used(coords_.size(), false);
  auto take = [&](const std::vector<std::string>& part, std::vector<int>& out,
                  const char* label) {
    int last = -1;
    for (const auto& name : part) {
      const auto idx = index_of(name);
      if (!idx) throw PreconditionError(std::string("split.") + label + " names unknown coordinate '" + name + "'");
      if (used[*idx]) throw PreconditionError("coordinate '" + name + "' appears twice in split");
      if (*idx < last)
        throw PreconditionError(std::string("split.") + label + " does not preserve coordinate order");
      used[*idx] = true;
      last = *idx;
      out.push_back(*idx);
    }
  };
  take(x, split.x, "x");
  take(y, split.y, "y");
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw PreconditionError("split omits coordinate '" + coords_[i] + "'");
  split_ = std::move(split);
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int Chart::require_index(std::string_view name) const {
  const auto idx = index_of(name);
  if (!idx) throw PreconditionError("unknown coordinate '" + std::string(name) + "'");
  return *idx;
}

const Chart::Split& Chart::split() const {
  if (!split_) throw PreconditionError("chart has no (x, y) split");
  return *split_;
}

// ---------------------------------------------------------------------------
// Expr arithmetic

namespace {

void normalize_sign(Polynomial& num, Polynomial& den) {
  const Rational lc = den.leading_coefficient();
  if (lc != 1) {
    const Rational inv = Rational(1) / lc;
    num *= inv;
    den *= inv;
  }
}

}  // namespace

Expr Expr::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("division by the zero expression");
  Expr out;
  if (num.is_zero()) return out;
  if (den.is_constant()) {
    out.num_ = num * (Rational(1) / den.constant_value());
    return out;
  }
  const Polynomial g = gcd(num, den);
  out.num_ = g.is_constant() ? num : exact_divide(num, g);
  out.den_ = g.is_constant() ? den : exact_divide(den, g);
  normalize_sign(out.num_, out.den_);
  return out;
}

Expr& Expr::operator+=(const Expr& b) {
  if (is_polynomial() && b.is_polynomial()) {
    num_ += b.num_;
    return *this;
  }
  if (den_ == b.den_) {
    *this = fraction(num_ + b.num_, den_);
    return *this;
  }
  *this = fraction(num_ * b.den_ + b.num_ * den_, den_ * b.den_);
  return *this;
}

Expr& Expr::operator-=(const Expr& b) { return *this += -b; }

Expr& Expr::operator*=(const Expr& b) {
  if (is_zero() || b.is_zero()) {
    *this = Expr();
    return *this;
  }
  if (is_polynomial() && b.is_polynomial()) {
    num_ = num_ * b.num_;
    return *this;
  }
  const Polynomial g1 = gcd(num_, b.den_);
  const Polynomial g2 = gcd(b.num_, den_);
  Polynomial n = exact_divide(num_, g1) * exact_divide(b.num_, g2);
  Polynomial d = exact_divide(den_, g2) * exact_divide(b.den_, g1);
  normalize_sign(n, d);
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

Expr& Expr::operator/=(const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero expression");
  Expr inv;
  inv.num_ = b.den_;
  inv.den_ = b.num_;
  normalize_sign(inv.num_, inv.den_);
  return *this *= inv;
}

Expr Expr::operator-() const {
  Expr out = *this;
  out.num_ = -out.num_;
  return out;
}

Expr pow(const Expr& base, unsigned exponent) {
  if (exponent == 0) return Expr(1);
  return Expr::fraction(base.num().pow(exponent), base.den().pow(exponent));
}

Expr partial(const Expr& e, int var) {
  if (!e.depends_on(var)) return Expr();
  if (e.is_polynomial()) return Expr::fraction(e.num().partial(var), e.den());
  const Polynomial& n = e.num();
  const Polynomial& d = e.den();
  return Expr::fraction(n.partial(var) * d - n * d.partial(var), d * d);
}

Rational eval(const Expr& e, std::span<const Rational> p) {
  const Rational d = e.den().eval(p);
  if (d == 0) throw DomainError("denominator vanishes at " + to_string(Point(p.begin(), p.end())));
  return e.num().eval(p) / d;
}

double eval_double(const Expr& e, std::span<const double> p) {
  return e.num().eval_double(p) / e.den().eval_double(p);
}

Expr restrict(const Expr& e, std::span<const std::optional<Rational>> values,
              std::span<const int> new_index) {
  const Polynomial d = e.den().restrict(values, new_index);
  if (d.is_zero()) throw DomainError("denominator vanishes identically on the slice");
  return Expr::fraction(e.num().restrict(values, new_index), d);
}

RationalMatrix eval(const ExprMatrix& m, std::span<const Rational> p) {
  RationalMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = eval(m(i, j), p);
  return out;
}

Eigen::MatrixXd eval_double(const ExprMatrix& m, std::span<const double> p) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = eval_double(m(i, j), p);
  return out;
}

bool is_zero(const ExprMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER | IDENT | '(' expr ')'

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer literal");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) fail("exponent too large");
      return pow(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(text_[pos_]))))
        fail("malformed number (decimals and implicit multiplication are not allowed)");
      return Expr(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto idx = chart_.index_of(name);
      if (!idx) throw ParseError("unknown coordinate '" + std::string(name) + "'", start);
      return Expr::variable(*idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const Chart& chart) { return Parser(text, chart).parse(); }

std::string to_string(const Expr& e, const Chart& chart) {
  const auto& names = chart.names();
  if (e.is_polynomial()) return e.num().to_string(names);
  return "(" + e.num().to_string(names) + ")/(" + e.den().to_string(names) + ")";
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  const int vars = std::max(e.num().max_variable(), e.den().max_variable()) + 1;
  std::vector<std::string> names;
  for (int i = 0; i < vars; ++i) names.push_back("c" + std::to_string(i + 1));
  if (e.is_polynomial()) return os << e.num().to_string(names);
  return os << "(" << e.num().to_string(names) << ")/(" << e.den().to_string(names) << ")";
}

}  // namespace dirac
