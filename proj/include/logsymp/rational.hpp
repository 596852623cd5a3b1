#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace logsymp {

/// Exact rational scalar. Kept canonical (lowest terms, positive
/// denominator) by construction; all arithmetic stays exact.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form. den must be nonzero.
Rational rat(long num, long den = 1);

/// Parses "p", "-p", or "p/q". Returns nullopt on malformed input or q = 0.
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

/// Integer value of an integral rational.
Integer integer_part(const Rational& value);

/// base^exponent with integer exponent of either sign; base must be
/// nonzero when exponent < 0.
Rational pow_rational(const Rational& base, long exponent);

} // namespace logsymp
