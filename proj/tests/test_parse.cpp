#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "annihilant/expr.hpp"
#include "fuzz_util.hpp"

using namespace annihilant;

namespace {

const Space k2d{2, false};

Expr eq50_solution() {
    Atom p2, p12, p14;
    p2.power = 2;
    p12.power = 12;
    p14.power = 14;
    return Expr::from_terms(
        k2d, {Term{Coefficient(Rational(91, 12012)), {{1, p2}, {2, p12}}},
              Term{Coefficient(Rational(-1, 12012)), {{2, p14}}}});
}

}  // namespace

TEST_CASE("plain formatting uses a common denominator") {
    CHECK(format(Expr::zero(k2d), Style::plain) == "0");
    CHECK(format(eq50_solution(), Style::plain) ==
          "(91*x1^2*x2^12 - x2^14)/12012");

    Atom p2, p14;
    p2.power = 2;
    p14.power = 14;
    Expr single = Expr::from_terms(
        k2d, {Term{Coefficient(Rational(1, 24024)), {{1, p2}, {2, p14}}}});
    CHECK(format(single, Style::plain) == "x1^2*x2^14/24024");
}

TEST_CASE("latex formatting") {
    CHECK(format(eq50_solution(), Style::latex) ==
          "\\frac{91 x_{1}^{2} x_{2}^{12} - x_{2}^{14}}{12012}");

    Expr nu_term = Expr::monomial(k2d, Coord::x(1), 1,
                                  Coefficient::param("nu", -2));
    CHECK(format(nu_term, Style::latex) == "\\frac{x_{1}}{\\nu^{2}}");
    CHECK(format(nu_term, Style::plain) == "x1/nu^2");
}

TEST_CASE("parser precedence and associativity") {
    CHECK(parse("1+2*3^2", k2d) == Expr::constant(k2d, Rational(19)));
    CHECK(parse("x1/2/3", k2d) ==
          Expr::monomial(k2d, Coord::x(1), 1, Coefficient(Rational(1, 6))));
    CHECK(parse("-x1^2", k2d) == -Expr::monomial(k2d, Coord::x(1), 2));
    CHECK(parse("(2*x1)^2", k2d) ==
          Expr::monomial(k2d, Coord::x(1), 2, Coefficient(Rational(4))));
    CHECK(parse("2*x1^2", k2d) ==
          Expr::monomial(k2d, Coord::x(1), 2, Coefficient(Rational(2))));
    CHECK(parse(" x1 * x2 - x2 * x1 ", k2d).is_zero());
}

TEST_CASE("function arguments reduce to rational times coordinate") {
    Atom s2;
    s2.trig = Trig::sin;
    s2.freq = 2;
    CHECK(parse("sin(2*x1)", k2d) ==
          Expr::from_terms(k2d, {Term{Coefficient::one(), {{1, s2}}}}));

    Atom s1;
    s1.trig = Trig::sin;
    s1.freq = 1;
    CHECK(parse("sin(-x1)", k2d) ==
          -Expr::from_terms(k2d, {Term{Coefficient::one(), {{1, s1}}}}));

    CHECK(parse("sin(0*x1)", k2d).is_zero());
    CHECK(parse("cos(0*x1)", k2d) == Expr::constant(k2d, Rational(1)));
    CHECK(parse("exp(x1-x1)", k2d) == Expr::constant(k2d, Rational(1)));

    Space wave{1, true};
    Atom ct;
    ct.trig = Trig::cos;
    ct.freq = 2;
    CHECK(parse("cos(-2*t)", wave) ==
          Expr::from_terms(wave, {Term{Coefficient::one(), {{0, ct}}}}));

    CHECK_THROWS_AS((void)parse("sin(x1*x2)", k2d), UnsupportedError);
    CHECK_THROWS_AS((void)parse("exp(x2^2)", k2d), UnsupportedError);
    CHECK_THROWS_AS((void)parse("cos(2)", k2d), UnsupportedError);
    CHECK_THROWS_AS((void)parse("sin(x1+x2)", k2d), UnsupportedError);
}

TEST_CASE("syntax errors carry positions") {
    try {
        (void)parse("x1 + ", k2d);
        FAIL("expected ParseError");
    } catch (const ParseError& ex) {
        CHECK(ex.position() == 5);
    }
    try {
        (void)parse("x1 $ x2", k2d);
        FAIL("expected ParseError");
    } catch (const ParseError& ex) {
        CHECK(ex.position() == 3);
    }
    CHECK_THROWS_AS((void)parse("", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("(x1", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("x1^(-2)", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("x3", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("t", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("y1", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("x1 x2", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("1/0", k2d), ParseError);
    CHECK_THROWS_AS((void)parse("x1/x2", k2d), ParseError);
}

TEST_CASE("declared parameters parse as symbolic coefficients") {
    Expr e = parse("3*nu^2*x1 - x1/nu", k2d, {"nu"});
    Expr expect = add(Expr::monomial(k2d, Coord::x(1), 1,
                                     Coefficient(Rational(3), {{"nu", 2}})),
                      Expr::monomial(k2d, Coord::x(1), 1,
                                     Coefficient(Rational(-1), {{"nu", -1}})));
    CHECK(e == expect);
    CHECK_THROWS_AS((void)parse("nu*x1", k2d), ParseError);
}

TEST_CASE("plain format re-parses to the same expression") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        Space sp{1 + trial % 3, trial % 2 == 1};
        Expr e = fuzz::random_class_expr(rng, sp);
        std::string text = format(e, Style::plain);
        Expr back = parse(text, sp);
        CHECK(back == e);
        CHECK(format(back, Style::plain) == text);
    }
}

TEST_CASE("parameter coefficients survive the plain round trip") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        Space sp{2, false};
        Expr base = fuzz::random_class_expr(rng, sp, 2);
        std::uniform_int_distribution<int> exp_pick(-2, 2);
        std::vector<Term> terms;
        for (Term t : base.terms()) {
            int e = exp_pick(rng);
            if (e != 0) t.coeff = t.coeff * Coefficient::param("nu", e);
            terms.push_back(std::move(t));
        }
        Expr e = Expr::from_terms(sp, std::move(terms));
        CHECK(parse(format(e, Style::plain), sp, {"nu"}) == e);
    }
}

TEST_CASE("json round trip is lossless") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 60; ++trial) {
        Space sp{2, trial % 2 == 0};
        Expr e = fuzz::random_class_expr(rng, sp);
        if (trial % 3 == 0)
            e = scale(e, Coefficient::param("c", -2 + trial % 5));
        CHECK(expr_from_json(format(e, Style::json), sp) == e);
    }
    CHECK(expr_from_json(format(Expr::zero(k2d), Style::json), k2d).is_zero());
}

TEST_CASE("malformed json is rejected") {
    CHECK_THROWS_AS((void)expr_from_json("{", k2d), ParseError);
    CHECK_THROWS_AS((void)expr_from_json("{\"nope\":1}", k2d), ParseError);
    CHECK_THROWS_AS(
        (void)expr_from_json(
            R"({"terms":[{"coeff":{"num":"1","den":"1","params":{}},"atoms":[{"coord":"x9","pow":1,"exp":"0","trig":"none","freq":"0"}]}]})",
            k2d),
        DimensionError);
    CHECK_THROWS_AS(
        (void)expr_from_json(
            R"({"terms":[{"coeff":{"num":"1","den":"1","params":{}},"atoms":[{"coord":"bad","pow":1,"exp":"0","trig":"none","freq":"0"}]}]})",
            k2d),
        ParseError);
}

TEST_CASE("format_term renders standalone terms with sign") {
    Atom p14;
    p14.power = 14;
    Term t{Coefficient(Rational(-1, 12012)), {{2, p14}}};
    CHECK(format_term(t, Style::plain) == "-x2^14/12012");
    Term zero{Coefficient(), {}};
    CHECK(format_term(zero, Style::plain) == "0");
}
