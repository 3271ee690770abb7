#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "annihilant/coefficient.hpp"
#include "annihilant/errors.hpp"
#include "annihilant/rational.hpp"

namespace annihilant {

// Coordinate space: n spatial coordinates x1..xn plus an optional time
// coordinate t. In multi-indices and slot arrays, time always comes first.
struct Space {
    int n = 0;
    bool has_time = false;

    int dims() const { return n + (has_time ? 1 : 0); }

    friend bool operator==(const Space&, const Space&) = default;
};

// Coordinate id: 0 is t, i >= 1 is x_i.
class Coord {
public:
    static Coord t() { return Coord(0); }
    static Coord x(int i) { return Coord(i); }

    int id() const { return id_; }
    bool is_time() const { return id_ == 0; }
    std::string name() const { return id_ == 0 ? "t" : "x" + std::to_string(id_); }

    bool valid_in(const Space& sp) const {
        return is_time() ? sp.has_time : id_ >= 1 && id_ <= sp.n;
    }

    auto operator<=>(const Coord&) const = default;

private:
    explicit Coord(int id) : id_(id) {}
    int id_;
};

// Position of a coordinate in a slot array of length space.dims().
int slot_of(const Space& sp, Coord c);
Coord coord_of_slot(const Space& sp, int slot);

enum class Trig { none, cos, sin };

// One coordinate's factor inside a term: x^power * e^(exp_rate*x) * trig(freq*x).
// freq > 0 whenever trig != none; a factor that is identically 1 is never stored.
struct Atom {
    int power = 0;
    Rational exp_rate = 0;
    Trig trig = Trig::none;
    Rational freq = 0;

    bool is_identity() const {
        return power == 0 && exp_rate == 0 && trig == Trig::none;
    }

    friend bool operator==(const Atom&, const Atom&) = default;
};

// Fixed total order on atoms: higher powers first, then exponential rate,
// then trig kind and frequency.
int compare_atoms(const Atom& a, const Atom& b);

struct Term {
    Coefficient coeff;
    std::map<int, Atom> atoms;  // coord id -> atom, at most one per coordinate

    friend bool operator==(const Term&, const Term&) = default;
};

// Canonical finite sum of exponential-polynomial-trigonometric terms.
// Terms are merged on equal (atoms, parameter monomial) keys, zero terms are
// dropped, and the list is sorted by a fixed total order, so value equality
// is representation identity. The empty term list is the canonical zero.
class Expr {
public:
    explicit Expr(Space sp) : space_(sp) {}

    static Expr zero(Space sp) { return Expr(sp); }
    static Expr constant(Space sp, const Coefficient& c);
    static Expr constant(Space sp, const Rational& r) {
        return constant(sp, Coefficient(r));
    }
    static Expr monomial(Space sp, Coord c, int power,
                         const Coefficient& coeff = Coefficient::one());
    // Canonicalizes: prunes identity atoms, normalizes trig signs, merges and
    // sorts terms.
    static Expr from_terms(Space sp, std::vector<Term> terms);

    const Space& space() const { return space_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr operator-() const;

private:
    Space space_;
    std::vector<Term> terms_;
};

Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr scale(const Expr& e, const Coefficient& c);
Expr pow(const Expr& e, int exponent);  // exponent >= 0

// Exact partial derivative; order 0 returns e unchanged.
Expr derivative(const Expr& e, Coord coord, int order = 1);

// Formal repeated antiderivative: each single step picks the unique
// antiderivative inside the term class with no added constant (x^a maps to
// x^(a+1)/(a+1); exponential and trigonometric factors keep their shape).
// Inverse of derivative: derivative(antiderivative(e, c, p), c, p) == e.
Expr antiderivative(const Expr& e, Coord coord, int order);

bool equals(const Expr& a, const Expr& b);
bool is_zero(const Expr& e);

// The coefficient c with a == c*b, if one exists (c == 0 when a == 0).
// Absent when the ratio is not a single rational-times-parameter-monomial.
// b must be nonzero.
std::optional<Coefficient> proportional(const Expr& a, const Expr& b);

// Extended-precision numeric value. All coordinates of e's space and all
// parameters occurring in e must be bound.
BigFloat eval(const Expr& e, const std::map<int, Rational>& point,
              const std::map<std::string, Rational>& param_values = {});

enum class Style { plain, latex, json };

// Deterministic rendering of the canonical form. plain output re-parses to
// the same value; json is lossless (see expr_from_json).
std::string format(const Expr& e, Style style);

std::string format_term(const Term& t, Style style);

// Inverse of format(e, Style::json). The space is supplied by the caller.
Expr expr_from_json(const std::string& json_text, Space sp);

// Parses the expression grammar (see README): sums of products of powers of
// rationals, coordinates, parameters, and sin/cos/exp applied to a rational
// multiple of a single coordinate.
Expr parse(const std::string& text, Space sp,
           const std::vector<std::string>& params = {});

}  // namespace annihilant
