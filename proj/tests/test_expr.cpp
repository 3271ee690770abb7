#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "annihilant/expr.hpp"
#include "fuzz_util.hpp"

using namespace annihilant;

namespace {

const Space k2d{2, false};

Expr X(int i, int p = 1) { return Expr::monomial(k2d, Coord::x(i), p); }

Atom trig_atom(Trig kind, const Rational& freq) {
    Atom a;
    a.trig = kind;
    a.freq = freq;
    return a;
}

Atom power_atom(int p) {
    Atom a;
    a.power = p;
    return a;
}

}  // namespace

TEST_CASE("canonical form merges, sorts and drops zeros") {
    Term a{Coefficient(Rational(2)), {{1, power_atom(2)}}};
    Term b{Coefficient(Rational(3)), {{1, power_atom(2)}}};
    Term c{Coefficient(Rational(-5)), {{1, power_atom(2)}}};
    CHECK(Expr::from_terms(k2d, {a, b, c}).is_zero());

    Expr left = Expr::from_terms(k2d, {a, Term{Coefficient(Rational(1)), {{2, power_atom(1)}}}});
    Expr right = Expr::from_terms(k2d, {Term{Coefficient(Rational(1)), {{2, power_atom(1)}}}, a});
    CHECK(left == right);
    CHECK(left.terms().size() == 2);
}

TEST_CASE("identity atoms are pruned") {
    Term t{Coefficient(Rational(4)), {{1, power_atom(0)}}};
    Expr e = Expr::from_terms(k2d, {t});
    REQUIRE(e.terms().size() == 1);
    CHECK(e.terms()[0].atoms.empty());
}

TEST_CASE("trig normalization folds signs and zero frequencies") {
    // cos(-2 x1) = cos(2 x1)
    Expr c_neg = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::cos, -2)}}}});
    Expr c_pos = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::cos, 2)}}}});
    CHECK(c_neg == c_pos);

    // sin(-x1) = -sin(x1)
    Expr s_neg = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::sin, -1)}}}});
    Expr s_pos = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::sin, 1)}}}});
    CHECK(s_neg == -s_pos);

    // cos(0 x1) = 1, sin(0 x1) = 0
    Expr c0 = Expr::from_terms(
        k2d, {Term{Coefficient(Rational(7)), {{1, trig_atom(Trig::cos, 0)}}}});
    CHECK(c0 == Expr::constant(k2d, Rational(7)));
    Expr s0 = Expr::from_terms(
        k2d, {Term{Coefficient(Rational(7)), {{1, trig_atom(Trig::sin, 0)}}}});
    CHECK(s0.is_zero());
}

TEST_CASE("terms with unlike parameter monomials stay separate") {
    Term plain{Coefficient(Rational(2)), {{1, power_atom(1)}}};
    Term with_nu{Coefficient(Rational(1), {{"nu", 1}}), {{1, power_atom(1)}}};
    Expr e = Expr::from_terms(k2d, {plain, with_nu});
    CHECK(e.terms().size() == 2);
    CHECK(proportional(e, X(1)) == std::nullopt);
}

TEST_CASE("polynomial arithmetic") {
    Expr sq = pow(add(X(1), X(2)), 2);
    Expr expect = add(add(X(1, 2), scale(mul(X(1), X(2)), Coefficient(Rational(2)))), X(2, 2));
    CHECK(sq == expect);

    CHECK(sub(sq, sq).is_zero());
    CHECK(mul(Expr::zero(k2d), sq).is_zero());
}

TEST_CASE("same-coordinate trig products expand to sums") {
    Expr sin1 = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::sin, 1)}}}});
    Expr cos1 = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::cos, 1)}}}});
    Expr cos2 = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::cos, 2)}}}});
    Expr sin2 = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{1, trig_atom(Trig::sin, 2)}}}});

    // sin^2 = (1 - cos 2x)/2
    CHECK(mul(sin1, sin1) ==
          sub(Expr::constant(k2d, Rational(1, 2)), scale(cos2, Coefficient(Rational(1, 2)))));
    // cos^2 = (1 + cos 2x)/2
    CHECK(mul(cos1, cos1) ==
          add(Expr::constant(k2d, Rational(1, 2)), scale(cos2, Coefficient(Rational(1, 2)))));
    // sin cos = sin(2x)/2
    CHECK(mul(sin1, cos1) == scale(sin2, Coefficient(Rational(1, 2))));
    // sin^2 + cos^2 = 1
    CHECK(add(mul(sin1, sin1), mul(cos1, cos1)) == Expr::constant(k2d, Rational(1)));

    // distinct coordinates stay a single product term
    Expr sx2 = Expr::from_terms(
        k2d, {Term{Coefficient::one(), {{2, trig_atom(Trig::sin, 1)}}}});
    CHECK(mul(sin1, sx2).terms().size() == 1);
}

TEST_CASE("derivative follows the product rule per factor") {
    // d/dx1 of x1^2 e^(3 x1) sin(2 x1)
    Atom a;
    a.power = 2;
    a.exp_rate = 3;
    a.trig = Trig::sin;
    a.freq = 2;
    Expr e = Expr::from_terms(k2d, {Term{Coefficient::one(), {{1, a}}}});
    Expr d = derivative(e, Coord::x(1));

    Atom lower = a;
    lower.power = 1;
    Atom cosv = a;
    cosv.trig = Trig::cos;
    Expr expect = Expr::from_terms(
        k2d, {Term{Coefficient(Rational(2)), {{1, lower}}},
              Term{Coefficient(Rational(3)), {{1, a}}},
              Term{Coefficient(Rational(2)), {{1, cosv}}}});
    CHECK(d == expect);

    CHECK(derivative(e, Coord::x(2)).is_zero());
    CHECK(derivative(e, Coord::x(1), 0) == e);
}

TEST_CASE("repeated antiderivative of t sin t") {
    Space sp{1, true};
    Atom tsint;
    tsint.power = 1;
    tsint.trig = Trig::sin;
    tsint.freq = 1;
    Expr e = Expr::from_terms(sp, {Term{Coefficient::one(), {{0, tsint}}}});

    Atom cost;
    cost.trig = Trig::cos;
    cost.freq = 1;
    Expr expect = add(e, Expr::from_terms(sp, {Term{Coefficient(Rational(4)),
                                                    {{0, cost}}}}));
    CHECK(antiderivative(e, Coord::t(), 4) == expect);
}

TEST_CASE("antiderivative inverts derivative on the closed class") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        Space sp{1 + static_cast<int>(trial % 3), trial % 2 == 0};
        Expr e = fuzz::random_class_expr(rng, sp);
        for (int s = 0; s < sp.dims(); ++s) {
            Coord c = coord_of_slot(sp, s);
            for (int order = 1; order <= 3; ++order)
                CHECK(derivative(antiderivative(e, c, order), c, order) == e);
        }
    }
}

namespace {

// Repeated-integration oracle, independent of antiderivative(): the p-fold
// integral of x^a from 0 equals the single integral of (x-u)^(p-1) u^a / (p-1)!
// over [0, x], expanded here by the binomial theorem and integrated termwise.
Rational cauchy_coefficient(int a, int p) {
    Rational total = 0;
    for (int i = 0; i < p; ++i) {
        Rational piece = binomial(p - 1, i) / Rational(a + i + 1);
        if (i % 2 == 1) piece = -piece;
        total += piece;
    }
    Rational fact = 1;
    for (int i = 2; i < p; ++i) fact *= i;
    return total / fact;
}

}  // namespace

TEST_CASE("antiderivative of polynomials matches the repeated-integration oracle") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 100; ++trial) {
        Space sp{2, false};
        Expr e = fuzz::random_polynomial(rng, sp);
        int p = 1 + static_cast<int>(trial % 4);
        Coord c = Coord::x(1 + trial % 2);

        std::vector<Term> oracle_terms;
        for (const Term& t : e.terms()) {
            auto it = t.atoms.find(c.id());
            int a = it == t.atoms.end() ? 0 : it->second.power;
            Term nt = t;
            nt.coeff = t.coeff * Coefficient(cauchy_coefficient(a, p));
            nt.atoms[c.id()] = power_atom(a + p);
            oracle_terms.push_back(nt);
        }
        Expr oracle = Expr::from_terms(sp, std::move(oracle_terms));
        CHECK(antiderivative(e, c, p) == oracle);
    }
}

TEST_CASE("proportional recovers scalar ratios and rejects the rest") {
    Expr s = add(X(1, 2), scale(X(2), Coefficient(Rational(3))));
    auto r = proportional(scale(s, Coefficient(Rational(-7, 2))), s);
    REQUIRE(r.has_value());
    CHECK(*r == Coefficient(Rational(-7, 2)));

    auto pr = proportional(scale(s, Coefficient::param("nu", 2)), s);
    REQUIRE(pr.has_value());
    CHECK(*pr == Coefficient::param("nu", 2));

    CHECK(proportional(X(1), X(2)) == std::nullopt);
    CHECK(proportional(add(X(1), X(2)), X(1)) == std::nullopt);

    auto zero = proportional(Expr::zero(k2d), s);
    REQUIRE(zero.has_value());
    CHECK(zero->is_zero());

    CHECK_THROWS_AS((void)proportional(s, Expr::zero(k2d)), Error);
}

TEST_CASE("eval is exact on rational data and extended-precision on transcendentals") {
    std::map<int, Rational> pt{{1, Rational(1, 2)}, {2, Rational(3)}};
    Expr poly = mul(X(1, 2), X(2));
    CHECK(eval(poly, pt) == to_bigfloat(Rational(3, 4)));

    Atom ex;
    ex.exp_rate = 1;
    Expr e_x1 = Expr::from_terms(k2d, {Term{Coefficient::one(), {{1, ex}}}});
    BigFloat v = eval(e_x1, {{1, Rational(1)}, {2, Rational(0)}});
    CHECK(abs(v - exp(BigFloat(1))) < BigFloat("1e-45"));

    Expr with_param = Expr::constant(k2d, Coefficient::param("nu", -1));
    CHECK(eval(with_param, pt, {{"nu", Rational(4)}}) == to_bigfloat(Rational(1, 4)));
    CHECK_THROWS_AS((void)eval(with_param, pt), EvalError);
    CHECK_THROWS_AS((void)eval(poly, {{1, Rational(1)}}), EvalError);
}

TEST_CASE("canonical determinism: equals iff identical plain rendering") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        Space sp{2, false};
        Expr a = fuzz::random_class_expr(rng, sp);
        Expr b = fuzz::random_class_expr(rng, sp);
        std::vector<Term> shuffled(a.terms().rbegin(), a.terms().rend());
        Expr a2 = Expr::from_terms(sp, std::move(shuffled));
        CHECK(a == a2);
        CHECK(format(a, Style::plain) == format(a2, Style::plain));
        CHECK((a == b) == (format(a, Style::plain) == format(b, Style::plain)));
    }
}

TEST_CASE("space mismatches are rejected") {
    Expr a = X(1);
    Expr b = Expr::monomial(Space{3, false}, Coord::x(1), 1);
    CHECK_THROWS_AS((void)add(a, b), DimensionError);
    CHECK_THROWS_AS((void)Expr::monomial(k2d, Coord::x(3), 1), DimensionError);
    CHECK_THROWS_AS((void)Expr::monomial(k2d, Coord::t(), 1), DimensionError);
    CHECK_THROWS_AS((void)derivative(X(1), Coord::x(5)), DimensionError);
}

TEST_CASE("linearity of derivative and antiderivative") {
    std::mt19937_64 rng(7);
    Space sp{2, true};
    for (int trial = 0; trial < 40; ++trial) {
        Expr a = fuzz::random_class_expr(rng, sp);
        Expr b = fuzz::random_class_expr(rng, sp);
        Coord c = coord_of_slot(sp, trial % sp.dims());
        CHECK(derivative(add(a, b), c) == add(derivative(a, c), derivative(b, c)));
        CHECK(antiderivative(add(a, b), c, 2) ==
              add(antiderivative(a, c, 2), antiderivative(b, c, 2)));
    }
}
