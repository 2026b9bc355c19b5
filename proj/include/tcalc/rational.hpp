#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tcalc {

/// Exact arbitrary-precision rational. All symbolic coefficients use this type;
/// floating point enters only at evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p" for integers, "p/q" otherwise.
std::string rational_to_string(const Rational &r);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

double rational_to_double(const Rational &r);

bool rational_is_integer(const Rational &r);

} // namespace tcalc
