#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// Exact arbitrary-precision rational. Expression templates are disabled so
/// that values behave like plain scalars inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// A point of a chart: one exact rational per coordinate.
using Point = std::vector<Rational>;

/// q^e by repeated squaring.
Rational ipow(Rational q, unsigned e);

/// Parses "a", "-a" or "a/b" with integer a, b (b != 0).
Rational parse_rational(std::string_view text);

/// Formats as "a" or "a/b"; round-trips through parse_rational.
std::string to_string(const Rational& q);

std::string to_string(const Point& p);

}  // namespace dirac
