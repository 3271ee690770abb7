#pragma once

#include <map>
#include <optional>
#include <string>

#include "annihilant/rational.hpp"

namespace annihilant {

// A scalar of the coefficient domain: an exact rational times a monomial in
// formal parameters with signed integer exponents, e.g. (-3/2)*nu^-2*c^4.
// Sums of distinct parameter monomials are NOT representable here; they are
// handled one term at a time at the expression level.
//
// Invariants: the rational part is canonical (gcd 1, positive denominator),
// no parameter maps to exponent 0, and the zero coefficient has an empty
// parameter map.
class Coefficient {
public:
    Coefficient() : rat_(0) {}
    Coefficient(const Rational& r) : rat_(r) { rat_.canonicalize(); }
    Coefficient(long n) : rat_(n) {}
    Coefficient(const Rational& r, std::map<std::string, int> params);

    static Coefficient one() { return Coefficient(1); }
    static Coefficient param(const std::string& name, int exponent = 1);

    const Rational& rational() const { return rat_; }
    const std::map<std::string, int>& params() const { return params_; }

    bool is_zero() const { return rat_ == 0; }
    bool is_rational() const { return params_.empty(); }
    bool is_one() const { return params_.empty() && rat_ == 1; }

    Coefficient operator-() const;
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b);

    // this^e; e may be negative for nonzero coefficients.
    Coefficient pow(int e) const;
    Coefficient inverse() const;

    // Numeric value under a parameter binding; exact. Throws EvalError on an
    // unbound parameter or a zero value raised to a negative exponent.
    Rational value(const std::map<std::string, Rational>& param_values) const;

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.rat_ == b.rat_ && a.params_ == b.params_;
    }
    friend bool operator!=(const Coefficient& a, const Coefficient& b) {
        return !(a == b);
    }

    std::string str() const;

private:
    Rational rat_;
    std::map<std::string, int> params_;
};

// Fixed total order on parameter monomials (name ascending, then exponent
// descending), used by the canonical term order.
int compare_params(const std::map<std::string, int>& a,
                   const std::map<std::string, int>& b);

}  // namespace annihilant
