#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ipolar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact C(n, k); 0 outside the triangle. Pascal rows cached process-wide.
const BigInt& binom_exact(int n, int k);

/// ln C(n, k) via a cached lgamma table; -inf outside the triangle.
double log_binom(int n, int k);

}  // namespace ipolar
