#include "dirac/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace dirac {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  trim();
}

Monomial Monomial::variable(int index, int power) {
  std::vector<int> e(static_cast<std::size_t>(index) + 1, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool Monomial::divides(const Monomial& other) const {
  if (size() > other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<int> e(std::max(exps_.size(), other.exps_.size()), 0);
  for (int i = 0; i < size(); ++i) e[i] += exps_[i];
  for (int i = 0; i < other.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::operator/(const Monomial& other) const {
  std::vector<int> e = exps_;
  for (int i = 0; i < other.size(); ++i) e[i] -= other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::with_exponent(int var, int power) const {
  std::vector<int> e = exps_;
  if (static_cast<int>(e.size()) <= var) e.resize(var + 1, 0);
  e[var] = power;
  return Monomial(std::move(e));
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
  const int n = std::max(a.size(), b.size());
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(int index) { return term(Monomial::variable(index), 1); }

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.total_degree();
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

int Polynomial::max_variable() const {
  int v = -1;
  for (const auto& [m, c] : terms_) v = std::max(v, m.size() - 1);
  return v;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, coeff] : terms_) coeff *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [mm, cc] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm * m, cc * c);
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial(int var) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const int k = m[var];
    if (k == 0) continue;
    out.add_term(m.with_exponent(var, k - 1), c * k);
  }
  return out;
}

Polynomial Polynomial::coefficient_in(int var, int power) const {
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (m[var] == power) out.add_term(m.with_exponent(var, 0), c);
  return out;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= static_cast<int>(point.size()))
        throw std::out_of_range("polynomial variable outside point arity");
      t *= ipow(point[i], static_cast<unsigned>(m[i]));
    }
    sum += t;
  }
  return sum;
}

double Polynomial::eval_double(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.convert_to<double>();
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= static_cast<int>(point.size()))
        throw std::out_of_range("polynomial variable outside point arity");
      t *= std::pow(point[i], m[i]);
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::restrict(std::span<const std::optional<Rational>> values,
                                std::span<const int> new_index) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    std::vector<int> e;
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i < static_cast<int>(values.size()) && values[i]) {
        coeff *= ipow(*values[i], static_cast<unsigned>(m[i]));
        continue;
      }
      const int j = i < static_cast<int>(new_index.size()) ? new_index[i] : -1;
      if (j < 0) throw std::logic_error("restrict: variable neither fixed nor kept");
      if (static_cast<int>(e.size()) <= j) e.resize(j + 1, 0);
      e[j] += m[i];
    }
    out.add_term(Monomial(std::move(e)), coeff);
  }
  return out;
}

Polynomial Polynomial::reindex(std::span<const int> new_index) const {
  return restrict({}, new_index);
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial out = *this;
  return out *= Rational(1) / leading_coefficient();
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      os << dirac::to_string(mag);
      need_star = true;
    }
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      if (i >= static_cast<int>(names.size()))
        throw std::out_of_range("polynomial variable has no name");
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Division and gcd

namespace {

std::optional<Polynomial> try_divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_constant()) return dividend * (Rational(1) / divisor.constant_value());
  const int top = divisor.max_variable();
  for (int v = 0; v <= top; ++v)
    if (divisor.degree_in(v) > dividend.degree_in(v)) {
      if (dividend.is_zero()) return Polynomial();
      return std::nullopt;
    }
  Polynomial quotient;
  Polynomial rest = dividend;
  const Monomial& lm = divisor.leading_monomial();
  const Rational& lc = divisor.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& rm = rest.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    const Monomial q = rm / lm;
    const Rational qc = rest.leading_coefficient() / lc;
    quotient += Polynomial::term(q, qc);
    rest -= divisor.mul_monomial(q, qc);
  }
  return quotient;
}

}  // namespace

Polynomial exact_divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::logic_error("exact_divide by zero polynomial");
  auto q = try_divide(dividend, divisor);
  if (!q) throw std::logic_error("exact_divide: not divisible");
  return std::move(*q);
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  const int db = b.degree_in(var);
  const Polynomial lb = b.coefficient_in(var, db);
  Polynomial r = a;
  while (!r.is_zero()) {
    const int dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lr = r.coefficient_in(var, dr);
    r = r * lb - lr * b.mul_monomial(Monomial::variable(var, dr - db), 1);
  }
  return r;
}

Polynomial content_in(const Polynomial& p, int var) {
  const int d = p.degree_in(var);
  Polynomial g;
  for (int k = d; k >= 0; --k) {
    const Polynomial c = p.coefficient_in(var, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

namespace {

/// p scaled by a nonzero rational so its coefficients are coprime integers.
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1;
  Integer num = 0;
  for (const auto& [m, c] : p.terms()) {
    const Integer d = boost::multiprecision::denominator(c);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  for (const auto& [m, c] : p.terms()) {
    const Integer v = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
    num = boost::multiprecision::gcd(num, v);
  }
  return p * Rational(den, num);
}

Polynomial primitive_part(const Polynomial& p, int var) {
  return integer_primitive(exact_divide(p, content_in(p, var)));
}

int smallest_common_variable(const Polynomial& a, const Polynomial& b) {
  const int top = std::max(a.max_variable(), b.max_variable());
  for (int v = 0; v <= top; ++v)
    if (a.depends_on(v) || b.depends_on(v)) return v;
  return -1;
}

}  // namespace

namespace {

// Heuristic gcd over Z (Char, Geddes, Gonnet): evaluate one variable at a
// large integer, recurse, and rebuild the gcd from the ξ-adic digits of the
// result; every candidate is confirmed by exact division.

Integer integer_content(const Polynomial& p) {
  Integer g = 0;
  for (const auto& [m, c] : p.terms()) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(c));
  return g;
}

Integer max_norm(const Polynomial& p) {
  Integer n = 0;
  for (const auto& [m, c] : p.terms()) n = std::max(n, Integer(boost::multiprecision::abs(boost::multiprecision::numerator(c))));
  return n;
}

Polynomial substitute(const Polynomial& p, int var, const Integer& x) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Integer f = 1;
    for (int e = 0; e < m[var]; ++e) f *= x;
    out += Polynomial::term(m.with_exponent(var, 0), c * Rational(f));
  }
  return out;
}

Polynomial positive(Polynomial p) {
  if (!p.is_zero() && p.leading_coefficient() < 0) p = -p;
  return p;
}

Polynomial interpolate(Polynomial h, int var, const Integer& x) {
  Polynomial out;
  const Integer half = x / 2;
  for (int k = 0; !h.is_zero(); ++k) {
    Polynomial digit;
    for (const auto& [m, c] : h.terms()) {
      Integer r = boost::multiprecision::numerator(c) % x;
      if (r < 0) r += x;
      if (r > half) r -= x;
      if (r != 0) digit += Polynomial::term(m, Rational(r));
    }
    h = (h - digit) * Rational(Integer(1), x);
    out += digit.mul_monomial(Monomial::variable(var, k), 1);
  }
  return positive(out);
}

Polynomial primitive_z(const Polynomial& p) {
  if (p.is_zero()) return p;
  return positive(p * Rational(Integer(1), integer_content(p)));
}

std::optional<Polynomial> heu_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return positive(g);
  if (g.is_zero()) return positive(f);
  const Integer cf = integer_content(f);
  const Integer cg = integer_content(g);
  const Integer c = boost::multiprecision::gcd(cf, cg);
  if (f.is_constant() || g.is_constant()) return Polynomial(Rational(c));
  const Polynomial pf = positive(f * Rational(Integer(1), cf));
  const Polynomial pg = positive(g * Rational(Integer(1), cg));
  const int var = std::max(pf.max_variable(), pg.max_variable());

  const Integer fn = max_norm(pf), gn = max_norm(pg);
  const Integer b = 2 * std::min(fn, gn) + 29;
  const Integer lf = boost::multiprecision::abs(boost::multiprecision::numerator(pf.leading_coefficient()));
  const Integer lg = boost::multiprecision::abs(boost::multiprecision::numerator(pg.leading_coefficient()));
  Integer x = std::max(std::min(b, Integer(99 * boost::multiprecision::sqrt(b))),
                       Integer(2 * std::min(fn / lf, gn / lg) + 2));

  for (int attempt = 0; attempt < 6; ++attempt) {
    const Polynomial ff = substitute(pf, var, x);
    const Polynomial gg = substitute(pg, var, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      const auto h = heu_gcd(ff, gg);
      if (!h) return std::nullopt;
      const Polynomial cand = primitive_z(interpolate(*h, var, x));
      if (!cand.is_zero() && try_divide(pf, cand) && try_divide(pg, cand)) return cand * Rational(c);
      for (const auto* pair : {&ff, &gg}) {
        const auto co = try_divide(*pair, *h);
        if (!co) continue;
        const Polynomial cof = interpolate(*co, var, x);
        if (cof.is_zero()) continue;
        const Polynomial& whole = pair == &ff ? pf : pg;
        const Polynomial& other = pair == &ff ? pg : pf;
        if (auto q = try_divide(whole, cof)) {
          const Polynomial h2 = primitive_z(*q);
          if (!h2.is_zero() && try_divide(other, h2)) return h2 * Rational(c);
        }
      }
    }
    x = 73794 * x * boost::multiprecision::sqrt(boost::multiprecision::sqrt(x)) / 27011;
  }
  return std::nullopt;
}

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b) {
  const int v = smallest_common_variable(a, b);
  if (!a.depends_on(v)) return gcd(a, content_in(b, v));
  if (!b.depends_on(v)) return gcd(content_in(a, v), b);

  const Polynomial ca = content_in(a, v);
  const Polynomial cb = content_in(b, v);
  const Polynomial c = gcd(ca, cb);
  Polynomial pa = integer_primitive(exact_divide(a, ca));
  Polynomial pb = integer_primitive(exact_divide(b, cb));
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  Polynomial g;
  for (;;) {
    const Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = primitive_part(pb, v);
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return (c * g).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();
  if (auto h = heu_gcd(integer_primitive(a), integer_primitive(b))) return h->monic();
  return prs_gcd(a, b);
}

}  // namespace dirac
