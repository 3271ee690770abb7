#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annihilant/operators.hpp"

namespace annihilant {

// Record of the strategy chosen for one additive term of the inhomogeneity.
struct SolutionPlan {
    enum class Route { eigenfunction, annihilator, relaxed_annihilator, unsupported };

    Route route = Route::unsupported;
    std::optional<Coord> m;          // splitting coordinate (annihilator route)
    int lambda = 0;
    Expr W;                          // integrated inhomogeneity (annihilator route)
    std::optional<Coefficient> u_or_v;  // v for eigenfunction, u for relaxed route
    std::string diagnostic;          // reason, when unsupported
};

// Core primitive: given D = A + B, an integer k >= 1, and W with
//   A^(lambda+k) W = q   and   B^(lambda+1) W = 0,
// returns Q = sum over p of (-1)^p C(k+p-1, p) A^(lambda-p) B^p W,
// which satisfies D^k Q = q. The annihilator condition is checked up front
// and the result is re-verified symbolically before it is returned.
Expr theorem_4_1(const LinDiffOp& A, const LinDiffOp& B, int k, int lambda,
                 const Expr& W);

// Relaxed variant for k = 1: with u != 0 and
//   B^(lambda+1) W = (-1)^lambda (u - 1) q  where  q = A^(lambda+1) W,
// returns Q = (1/u) sum over p of (-1)^p A^(lambda-p) B^p W, satisfying
// (A + B) Q = q.
Expr theorem_4_2(const LinDiffOp& A, const LinDiffOp& B, int lambda,
                 const Expr& W, const Coefficient& u);

// Eigenfunction shortcut: if D q = v q with v != 0, then q / v^k solves
// D^k Q = q.
Expr lemma_4_3(const LinDiffOp& D, int k, const Expr& q);

// Problem descriptors for the strategy selector.
struct GeneralizedPolyharmonic {
    Space space;
    std::vector<Coefficient> weights;  // one per slot, time first
    int k = 1;
};

struct GeneralizedHelmholtz {
    int n = 0;
    int j = 1;
    int k = 1;
    Coefficient nu;
};

// Picks the solution route for a single canonical term: the eigenfunction
// shortcut when D S is a scalar multiple of S, otherwise the annihilator
// route when S splits as f(x_m) times a monomial in the other coordinates
// (m maximizing the removed exponent, ties to the lowest coordinate id),
// otherwise unsupported. forced_m overrides the choice of m.
SolutionPlan select_strategy(const Expr& single_term,
                             const GeneralizedPolyharmonic& problem,
                             std::optional<Coord> forced_m = {});
SolutionPlan select_strategy(const Expr& single_term,
                             const GeneralizedHelmholtz& problem);

// High-level solvers. Each expands q into terms, routes every term through
// select_strategy, solves, sums, and symbolically verifies the result before
// returning. Unsupported terms raise UnsupportedError naming the term.
Expr solve_generalized_polyharmonic(const std::vector<Coefficient>& weights,
                                    int k, const Expr& q,
                                    std::optional<Coord> forced_m = {});
Expr solve_poisson(const Expr& q, std::optional<Coord> forced_m = {});
Expr solve_polyharmonic(int k, const Expr& q);
Expr solve_generalized_helmholtz(int j, int k, const Coefficient& nu,
                                 const Expr& q);

}  // namespace annihilant
