#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace payback {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational carrier for all times and amounts. Payback detection is a
// sign-crossing problem; everything stays in lowest-terms rationals so that
// break-even comparisons are exact.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", integer, or decimal ("0.1" -> 1/10, exactly).
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// "p/q" when the denominator is not 1, plain integer otherwise.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

// Floor of the q-th root of a nonnegative integer.
BigInt integer_nth_root(const BigInt& value, unsigned q);

}  // namespace payback
