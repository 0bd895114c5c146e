#pragma once

// Exact scalar types shared by every module. Integers and rationals are
// arbitrary precision; nothing in the library touches floating point.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace skeltrop {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer (optional leading '-').
Integer parse_integer(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "3/1", "-1/2".
std::string format_rational(const Rational& value);

inline Rational to_rational(const Integer& value) { return Rational(value); }

}  // namespace skeltrop
