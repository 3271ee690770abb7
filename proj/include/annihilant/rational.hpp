#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace annihilant {

// Exact arithmetic throughout: big integers and canonical rationals from GMP.
using BigInt = mpz_class;
using Rational = mpq_class;

// Extended-precision reals for numeric evaluation and finite differences.
// 50 decimal digits keeps high-order difference stencils far away from
// rounding noise.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                  boost::multiprecision::et_off>;

// "3", "-7/4". Throws ParseError on malformed input or zero denominator.
Rational rational_from_string(std::string_view text);

// Canonical "p" or "p/q" with q > 1.
std::string to_string(const Rational& r);

BigFloat to_bigfloat(const Rational& r);

// r^e with e possibly negative (requires r != 0 then).
Rational rational_pow(const Rational& r, long e);

// C(n, p) for n, p >= 0.
Rational binomial(unsigned long n, unsigned long p);

}  // namespace annihilant
