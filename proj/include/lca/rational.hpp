#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace lca {

/// Arbitrary-precision rational; vote tables and the enumeration checkers
/// stay exact no matter how the bucket widths combine.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

Rational rational_pow(const Rational& base, std::int64_t exp);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergents).
Rational snap_to_rational(double x, std::int64_t max_den = 1000000);

}  // namespace lca
