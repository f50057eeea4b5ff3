#pragma once

#include <gmpxx.h>

#include <string>

namespace abcprop {

using Rational = mpq_class;

// num/den in lowest terms.
Rational make_rational(long num, long den);

// "num/den" in lowest terms; integers keep the "/1".
std::string to_fraction_string(const Rational& q);

// Accepts "a/b" or a bare integer. Throws InputError on malformed text or a
// zero denominator.
Rational parse_fraction(const std::string& text);

}  // namespace abcprop
