#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace xsmoo {

/// Exact nonnegative-or-signed rational used for weights, bounds and scores.
using Rational = mpq_class;

/// Parses "num", "num/den" or a plain decimal such as "0.35" into a
/// canonical rational. Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text, or "num" when the denominator is one.
std::string to_string(const Rational& value);

/// Largest integer not exceeding value.
mpz_class floor(const Rational& value);

/// 2^exponent as an exact rational (exponent may be negative).
Rational pow2(long exponent);

double to_double(const Rational& value);

}  // namespace xsmoo
