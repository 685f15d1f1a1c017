#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sbfe {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "num/den" or an integer literal. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; the denominator is always written, e.g. "3/1".
std::string format_rational(const Rational& value);

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

double to_double(const Rational& value);

/// floor(value) for a rational value.
BigInt floor_of(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace sbfe
