#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace tgw {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Accepts "p/q", "n" or "-p/q". Throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view s);
/// Lowest terms; integers print without "/1".
std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

long long to_ll(const Integer& z);

}  // namespace tgw
