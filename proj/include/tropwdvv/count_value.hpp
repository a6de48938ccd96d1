#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tropwdvv {

/// Arbitrary-precision signed integer used for every enumerative count.
using CountValue = mpz_class;

/// Exact rational used for positions and edge lengths.
using Rational = mpq_class;

/// Base-10 rendering with no exponent, sign only when negative.
std::string to_decimal(const CountValue& value);

/// Strict inverse of to_decimal: optional leading '-', then one or more digits.
/// Throws std::invalid_argument on anything else (whitespace, '+', exponents).
CountValue parse_decimal(std::string_view text);

std::string to_string(const Rational& value);

}  // namespace tropwdvv
