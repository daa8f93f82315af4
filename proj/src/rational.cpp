#include "dirac/rational.hpp"

#include "dirac/errors.hpp"

#include <cctype>

namespace dirac {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error("malformed rational '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw Error("malformed rational '" + std::string(whole) + "'");
  Integer value(std::string(text.substr(i)));
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational ipow(Rational q, unsigned e) {
  Rational r = 1;
  while (e > 0) {
    if (e & 1u) r *= q;
    e >>= 1u;
    if (e > 0) q *= q;
  }
  return r;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p[i]);
  }
  return out + ")";
}

}  // namespace dirac
