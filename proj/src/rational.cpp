#include "annihilant/rational.hpp"

#include <mpfr.h>

#include <cctype>

#include "annihilant/errors.hpp"

namespace annihilant {

Rational rational_from_string(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational literal", 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  (c == '-' && i == 0) || (c == '+' && i == 0);
        if (!ok) throw ParseError("malformed rational literal '" + s + "'", i);
    }
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw ParseError("malformed rational literal '" + s + "'", 0);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

BigFloat to_bigfloat(const Rational& r) {
    BigFloat out;
    mpfr_set_q(out.backend().data(), r.get_mpq_t(), MPFR_RNDN);
    return out;
}

Rational rational_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0 && e < 0) throw EvalError("zero raised to a negative power");
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(r.get_mpq_t()), ae);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(r.get_mpq_t()), ae);
    if (e < 0) mpq_inv(out.get_mpq_t(), out.get_mpq_t());
    return out;
}

Rational binomial(unsigned long n, unsigned long p) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, p);
    return Rational(b);
}

}  // namespace annihilant
