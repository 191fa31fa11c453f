#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace condtree {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "3", "-1/4", "0.125" or "2.5e-1" exactly. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when integral).
std::string to_string(const Rational& q);

}  // namespace condtree
