#pragma once

#include <gmpxx.h>

#include <string>

namespace aplim {

// Exact arbitrary-size integers and rationals. mpq_class keeps the canonical
// form we rely on everywhere: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Int = mpz_class;
using Rational = mpq_class;

// num/den with den != 0, canonicalized.
Rational make_rational(const Int& num, const Int& den);

// Parses "p" or "p/q" with optional sign, arbitrary size. Throws on junk.
Rational parse_rational(const std::string& text);

std::string to_string(const Int& n);
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

// q^e for integer e (e < 0 requires q != 0).
Rational rational_pow(const Rational& q, long e);

}  // namespace aplim
