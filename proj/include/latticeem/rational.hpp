#pragma once

// Arbitrary-precision integers and rationals (GMP) plus the small helpers the
// rest of the library shares: canonical "p/q" formatting, parsing, factorials.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace latticeem {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

/// Canonical "p/q" form; integers are written with denominator 1 ("3/1").
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and a leading sign. Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

Rational factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Positive modulo: result in [0, m).
Integer mod_floor(const Integer& a, const Integer& m);

Rational dot(const IntVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Integer dot(const IntVector& a, const IntVector& b);

RationalVector to_rational(const IntVector& v);

}  // namespace latticeem
