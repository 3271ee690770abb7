#pragma once

#include <map>
#include <vector>

#include "annihilant/expr.hpp"

namespace annihilant {

// A linear differential operator with constant coefficients: a polynomial in
// the commuting symbols d/dt, d/dx1, ..., d/dxn. Stored as a map from the
// derivative multi-index (time slot first) to its coefficient; zero
// coefficients are never stored. The empty map is the zero operator and
// {0 -> 1} is the identity.
class LinDiffOp {
public:
    using MultiIndex = std::vector<int>;

    explicit LinDiffOp(Space sp) : space_(sp) {}

    static LinDiffOp zero(Space sp) { return LinDiffOp(sp); }
    static LinDiffOp identity(Space sp);
    static LinDiffOp constant(Space sp, const Coefficient& c);
    // coeff * d^order/d(coord)^order
    static LinDiffOp partial(Space sp, Coord coord, int order,
                             const Coefficient& coeff = Coefficient::one());

    const Space& space() const { return space_; }
    const std::map<MultiIndex, Coefficient>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Adds c * d^mi, merging with any existing entry (which must then carry
    // the same parameter monomial).
    void add_entry(const MultiIndex& mi, const Coefficient& c);

    friend bool operator==(const LinDiffOp&, const LinDiffOp&) = default;

private:
    Space space_;
    std::map<MultiIndex, Coefficient> coeffs_;
};

// Laplacian over n purely spatial coordinates.
LinDiffOp make_laplacian(int n);
LinDiffOp make_laplacian(Space sp);

// Sum of w_i * d^2/dx_i^2 over every coordinate of sp (time first when
// present). All weights must be nonzero.
LinDiffOp make_generalized_laplacian(Space sp,
                                     const std::vector<Coefficient>& weights);

// Same, with coordinate `excluded` left out.
LinDiffOp make_incomplete_laplacian(Space sp,
                                    const std::vector<Coefficient>& weights,
                                    Coord excluded);

// d^2/dt^2 / c^2 - sum over spatial_n coordinates of d^2/dx_i^2.
LinDiffOp make_dalembert(const Coefficient& c, int spatial_n);

// Laplacian^j + nu over n spatial coordinates; j >= 1.
LinDiffOp make_helmholtz(int n, int j, const Coefficient& nu);

LinDiffOp make_const(Space sp, const Coefficient& v);

LinDiffOp op_add(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp op_sub(const LinDiffOp& a, const LinDiffOp& b);
// Composition = product of the coefficient polynomials; commutative here.
LinDiffOp op_compose(const LinDiffOp& a, const LinDiffOp& b);
// p-fold composition; p == 0 gives the identity.
LinDiffOp op_pow(const LinDiffOp& a, int p);
LinDiffOp op_scale(const LinDiffOp& a, const Coefficient& c);

Expr apply(const LinDiffOp& op, const Expr& e);

std::string op_to_json(const LinDiffOp& op);

}  // namespace annihilant
