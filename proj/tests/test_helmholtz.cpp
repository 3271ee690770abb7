#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "annihilant/helmholtz.hpp"
#include "annihilant/operators.hpp"
#include "fuzz_util.hpp"

using namespace annihilant;

namespace {

const Space k2d{2, false};

VectorField field2(const std::string& a, const std::string& b) {
    return VectorField{{parse(a, k2d), parse(b, k2d)}};
}

Expr divergence(const VectorField& v) {
    Expr d = Expr::zero(v.space());
    for (int i = 0; i < v.dim(); ++i)
        d = add(d, derivative(v.components[i], Coord::x(i + 1)));
    return d;
}

bool jacobian_symmetric(const VectorField& v) {
    for (int i = 0; i < v.dim(); ++i)
        for (int j = i + 1; j < v.dim(); ++j)
            if (!sub(derivative(v.components[i], Coord::x(j + 1)),
                     derivative(v.components[j], Coord::x(i + 1)))
                     .is_zero())
                return false;
    return true;
}

VectorField random_field(std::mt19937_64& rng, int n, int max_degree) {
    Space sp{n, false};
    VectorField f;
    for (int i = 0; i < n; ++i)
        f.components.push_back(fuzz::random_polynomial(rng, sp, 4, max_degree));
    return f;
}

PotentialMatrix random_matrix(std::mt19937_64& rng, int n, int max_degree) {
    Space sp{n, false};
    PotentialMatrix F;
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> row;
        for (int j = 0; j < n; ++j)
            row.push_back(fuzz::random_polynomial(rng, sp, 3, max_degree));
        F.entries.push_back(std::move(row));
    }
    return F;
}

}  // namespace

TEST_CASE("shear field splits into a pure rotation part") {
    Decomposition d = decompose(field2("x2", "0"));
    CHECK(d.phi.components[0] == parse("x2^3/6", k2d));
    CHECK(d.phi.components[1].is_zero());
    CHECK(d.F.entries[0][1] == parse("x2^2/2", k2d));
    CHECK(d.F.entries[0][0].is_zero());
    CHECK(d.G.is_zero());
    CHECK(d.R.entries[0][1] == parse("x2^2/2", k2d));
    CHECK(d.R.entries[1][0] == parse("-x2^2/2", k2d));
    CHECK(d.g.components[0].is_zero());
    CHECK(d.g.components[1].is_zero());
    CHECK(d.r.components[0] == parse("x2", k2d));
    CHECK(d.r.components[1].is_zero());
}

TEST_CASE("radial field is a pure gradient") {
    Decomposition d = decompose(field2("x1", "x2"));
    CHECK(d.G == parse("x1^2/2 + x2^2/2", k2d));
    CHECK(d.g.components[0] == parse("x1", k2d));
    CHECK(d.g.components[1] == parse("x2", k2d));
    CHECK(d.r.components[0].is_zero());
    CHECK(d.r.components[1].is_zero());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(d.R.entries[i][j].is_zero());
}

TEST_CASE("solid rotation keeps only the rotation part") {
    Decomposition d = decompose(field2("-x2", "x1"));
    CHECK(d.G.is_zero());
    CHECK(d.g.components[0].is_zero());
    CHECK(d.r.components[0] == parse("-x2", k2d));
    CHECK(d.r.components[1] == parse("x1", k2d));
}

TEST_CASE("trigonometric gradient field") {
    Decomposition d = decompose(field2("sin(x1)", "cos(x2)"));
    CHECK(d.phi.components[0] == parse("-sin(x1)", k2d));
    CHECK(d.r.components[0].is_zero());
    CHECK(d.r.components[1].is_zero());
    CHECK(d.g.components[0] == parse("sin(x1)", k2d));
    CHECK(d.g.components[1] == parse("cos(x2)", k2d));
}

TEST_CASE("vector potential of a high degree component") {
    Decomposition d = decompose(field2("x1^2*x2^10", "0"));
    CHECK(d.phi.components[0] == parse("(91*x1^2*x2^12 - x2^14)/12012", k2d));
    LinDiffOp lap = make_laplacian(2);
    for (int i = 0; i < 2; ++i)
        CHECK(apply(lap, d.phi.components[i]) ==
              field2("x1^2*x2^10", "0").components[i]);
}

TEST_CASE("potential matrix bookkeeping") {
    VectorField phi = field2("x1^2*x2", "x1*x2^3");
    Potentials pot = build_potentials(phi);
    CHECK(pot.F.entries[0][0] == parse("2*x1*x2", k2d));
    CHECK(pot.F.entries[0][1] == parse("x1^2", k2d));
    CHECK(pot.F.entries[1][0] == parse("x2^3", k2d));
    CHECK(pot.F.entries[1][1] == parse("3*x1*x2^2", k2d));
    CHECK(pot.G == parse("2*x1*x2 + 3*x1*x2^2", k2d));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(add(pot.R.entries[i][j], pot.R.entries[j][i]).is_zero());
    CHECK(pot.R.entries[0][1] == parse("x1^2 - x2^3", k2d));
}

TEST_CASE("fields from an arbitrary matrix obey the splitting identities") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 2;
        PotentialMatrix F = random_matrix(rng, n, 4);
        PotentialFields gr = fields(F);
        CHECK(divergence(gr.r).is_zero());
        CHECK(jacobian_symmetric(gr.g));
    }
}

TEST_CASE("random fields decompose with all certificates") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 2;
        VectorField f = random_field(rng, n, 5);
        Decomposition d = decompose(f);
        for (int i = 0; i < n; ++i)
            CHECK(add(d.g.components[i], d.r.components[i]) ==
                  f.components[i]);
        CHECK(divergence(d.r).is_zero());
        CHECK(jacobian_symmetric(d.g));
        LinDiffOp lap = make_laplacian(n);
        for (int i = 0; i < n; ++i)
            CHECK(apply(lap, d.phi.components[i]) == f.components[i]);
    }
}

TEST_CASE("field validation") {
    CHECK_THROWS_AS((void)VectorField{}.space(), DimensionError);
    VectorField bad{{parse("x1", k2d)}};  // one component over two coordinates
    CHECK_THROWS_AS((void)bad.space(), DimensionError);

    PotentialMatrix jagged;
    jagged.entries.push_back({parse("x1", k2d), parse("x2", k2d)});
    jagged.entries.push_back({parse("x1", k2d)});
    CHECK_THROWS_AS((void)fields(jagged), DimensionError);

    VectorField unsupported{
        {parse("x1*exp(x1)*x2*exp(x2)", k2d), Expr::zero(k2d)}};
    try {
        (void)decompose(unsupported);
        FAIL("expected UnsupportedError");
    } catch (const UnsupportedError& ex) {
        CHECK(std::string(ex.what()).find("component 1") != std::string::npos);
    }
}
