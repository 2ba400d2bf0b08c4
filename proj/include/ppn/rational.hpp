#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ppn {

using Integer = boost::multiprecision::cpp_int;
// Arbitrary-precision rational: stored in lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double to_double(const Rational& r);

// Parses "3", "-1/2", "0.001", "2.5e-3".
Rational parse_rational(const std::string& text);

// "3", "-1/2" (lowest terms).
std::string rational_to_string(const Rational& r);

// Fixed three decimals, round half away from zero: "1.000", "-0.001".
std::string rational_to_decimal3(const Rational& r);

}  // namespace ppn
