#include <algorithm>

#include "annihilant/solver.hpp"

namespace annihilant {

namespace {

// Alternating binomial sum shared by both theorem primitives; with k = 1
// every binomial weight is 1, which is the relaxed variant's sum.
Expr annihilator_sum(const LinDiffOp& A, const LinDiffOp& B, int k, int lambda,
                     const Expr& W) {
    Expr Q = Expr::zero(W.space());
    Expr BpW = W;
    for (int p = 0; p <= lambda; ++p) {
        Expr piece = apply(op_pow(A, lambda - p), BpW);
        Rational weight = binomial(k + p - 1, p);
        if (p % 2 == 1) weight = -weight;
        Q = add(Q, scale(piece, Coefficient(weight)));
        if (p < lambda) BpW = apply(B, BpW);
    }
    return Q;
}

}  // namespace

Expr theorem_4_1(const LinDiffOp& A, const LinDiffOp& B, int k, int lambda,
                 const Expr& W) {
    if (k < 1) throw Error("k must be positive");
    if (lambda < 0) throw Error("lambda must be non-negative");
    if (!(A.space() == B.space()) || !(A.space() == W.space()))
        throw DimensionError("operator and expression spaces differ");

    Expr annihilated = apply(op_pow(B, lambda + 1), W);
    if (!annihilated.is_zero())
        throw Error("annihilator condition failed: B^" +
                    std::to_string(lambda + 1) + " W = " +
                    format(annihilated, Style::plain));

    Expr q = apply(op_pow(A, lambda + k), W);
    Expr Q = annihilator_sum(A, B, k, lambda, W);

    Expr residual = sub(apply(op_pow(op_add(A, B), k), Q), q);
    if (!residual.is_zero())
        throw VerificationError("solution certificate failed: residual " +
                                format(residual, Style::plain));
    return Q;
}

Expr theorem_4_2(const LinDiffOp& A, const LinDiffOp& B, int lambda,
                 const Expr& W, const Coefficient& u) {
    if (u.is_zero()) throw Error("u must be nonzero");
    if (lambda < 0) throw Error("lambda must be non-negative");
    if (!(A.space() == B.space()) || !(A.space() == W.space()))
        throw DimensionError("operator and expression spaces differ");

    Expr q = apply(op_pow(A, lambda + 1), W);
    Expr lhs = apply(op_pow(B, lambda + 1), W);
    Expr rhs = sub(scale(q, u), q);
    if (lambda % 2 == 1) rhs = -rhs;
    if (!(lhs == rhs))
        throw Error("relaxed annihilator condition failed: B^" +
                    std::to_string(lambda + 1) + " W = " +
                    format(lhs, Style::plain));

    Expr Q = scale(annihilator_sum(A, B, 1, lambda, W), u.inverse());

    Expr residual = sub(apply(op_add(A, B), Q), q);
    if (!residual.is_zero())
        throw VerificationError("solution certificate failed: residual " +
                                format(residual, Style::plain));
    return Q;
}

Expr lemma_4_3(const LinDiffOp& D, int k, const Expr& q) {
    if (k < 1) throw Error("k must be positive");
    if (q.is_zero()) return q;

    std::optional<Coefficient> v = proportional(apply(D, q), q);
    if (!v) throw Error("q is not an eigenfunction of D");
    if (v->is_zero()) throw Error("eigenvalue is zero");

    Expr Q = scale(q, v->pow(-k));

    Expr image = Q;
    for (int i = 0; i < k; ++i) image = apply(D, image);
    if (!(image == q))
        throw VerificationError("solution certificate failed for eigenfunction route");
    return Q;
}

namespace {

// Coordinates whose factor carries an exponential or trigonometric part must
// be the integration coordinate; a pure power can stay on the monomial side.
bool is_pure_power(const Atom& a) {
    return a.exp_rate == 0 && a.trig == Trig::none;
}

const Term& require_single_term(const Expr& S) {
    if (S.terms().size() != 1)
        throw Error("strategy selection expects a single canonical term");
    return S.terms()[0];
}

SolutionPlan unsupported_plan(const Expr& S, std::string why) {
    return SolutionPlan{SolutionPlan::Route::unsupported, {}, 0, S, {},
                        std::move(why)};
}

std::optional<Coefficient> usable_eigenvalue(const LinDiffOp& D, const Expr& S) {
    std::optional<Coefficient> v = proportional(apply(D, S), S);
    if (v && !v->is_zero()) return v;
    return std::nullopt;
}

}  // namespace

SolutionPlan select_strategy(const Expr& single_term,
                             const GeneralizedPolyharmonic& problem,
                             std::optional<Coord> forced_m) {
    const Term& term = require_single_term(single_term);
    const Space& sp = problem.space;
    if (!(single_term.space() == sp))
        throw DimensionError("term and problem spaces differ");
    if (static_cast<int>(problem.weights.size()) != sp.dims())
        throw DimensionError("need one weight per coordinate");

    if (!forced_m) {
        LinDiffOp D = make_generalized_laplacian(sp, problem.weights);
        if (auto v = usable_eigenvalue(D, single_term))
            return SolutionPlan{SolutionPlan::Route::eigenfunction, {}, 0,
                                single_term, v, ""};
    }

    std::optional<Coord> m;
    if (forced_m) {
        if (!forced_m->valid_in(sp))
            throw DimensionError("forced coordinate not in space");
        m = forced_m;
    } else {
        std::vector<Coord> forced;
        for (const auto& [coord, atom] : term.atoms)
            if (!is_pure_power(atom)) forced.push_back(Coord::x(coord));
        if (forced.size() > 1)
            return unsupported_plan(
                single_term,
                "exponential or trigonometric factors on more than one "
                "coordinate, and not an eigenfunction");
        if (forced.size() == 1) {
            m = forced[0];
        } else {
            // Pure monomial: remove the largest exponent, lowest id on ties.
            int best_power = -1;
            for (int s = 0; s < sp.dims(); ++s) {
                Coord c = coord_of_slot(sp, s);
                auto it = term.atoms.find(c.id());
                int power = it == term.atoms.end() ? 0 : it->second.power;
                if (power > best_power) {
                    best_power = power;
                    m = c;
                }
            }
        }
    }

    int beta = 0;
    for (const auto& [coord, atom] : term.atoms) {
        if (coord == m->id()) continue;
        if (!is_pure_power(atom))
            return unsupported_plan(
                single_term, "coordinate " + Coord::x(coord).name() +
                                 " is not a pure power beside m = " + m->name());
        beta += atom.power;
    }

    int lambda = beta / 2;
    const Coefficient& w_m = problem.weights[slot_of(sp, *m)];
    Expr W = scale(antiderivative(single_term, *m, 2 * lambda + 2 * problem.k),
                   w_m.pow(-lambda - problem.k));
    return SolutionPlan{SolutionPlan::Route::annihilator, m, lambda, W, {}, ""};
}

SolutionPlan select_strategy(const Expr& single_term,
                             const GeneralizedHelmholtz& problem) {
    const Term& term = require_single_term(single_term);
    Space sp{problem.n, false};
    if (!(single_term.space() == sp))
        throw DimensionError("term and problem spaces differ");
    if (problem.nu.is_zero()) throw Error("nu must be nonzero");

    LinDiffOp D = make_helmholtz(problem.n, problem.j, problem.nu);
    if (auto v = usable_eigenvalue(D, single_term))
        return SolutionPlan{SolutionPlan::Route::eigenfunction, {}, 0,
                            single_term, v, ""};

    int degree = 0;
    for (const auto& [coord, atom] : term.atoms) {
        if (!is_pure_power(atom))
            return unsupported_plan(
                single_term,
                "not a polynomial and not an eigenfunction; an exact rational "
                "nu may enable the eigenfunction route");
        degree += atom.power;
    }

    int lambda = degree == 0 ? 0 : (degree + 2 * problem.j - 2) / (2 * problem.j);
    Expr W = scale(single_term, problem.nu.pow(-lambda - problem.k));
    return SolutionPlan{SolutionPlan::Route::annihilator, {}, lambda, W, {}, ""};
}

namespace {

Expr finish(const LinDiffOp& D, int k, const Expr& q, Expr Q) {
    Expr image = Q;
    for (int i = 0; i < k; ++i) image = apply(D, image);
    if (!(image == q))
        throw VerificationError("assembled solution failed the residual check");
    return Q;
}

}  // namespace

Expr solve_generalized_polyharmonic(const std::vector<Coefficient>& weights,
                                    int k, const Expr& q,
                                    std::optional<Coord> forced_m) {
    if (k < 1) throw Error("k must be positive");
    const Space& sp = q.space();
    GeneralizedPolyharmonic problem{sp, weights, k};
    LinDiffOp D = make_generalized_laplacian(sp, weights);

    Expr Q = Expr::zero(sp);
    for (const Term& term : q.terms()) {
        Expr S = Expr::from_terms(sp, {term});
        SolutionPlan plan = select_strategy(S, problem, forced_m);
        switch (plan.route) {
            case SolutionPlan::Route::eigenfunction:
                Q = add(Q, lemma_4_3(D, k, S));
                break;
            case SolutionPlan::Route::annihilator: {
                LinDiffOp A = LinDiffOp::partial(sp, *plan.m, 2,
                                                 weights[slot_of(sp, *plan.m)]);
                LinDiffOp B = make_incomplete_laplacian(sp, weights, *plan.m);
                Q = add(Q, theorem_4_1(A, B, k, plan.lambda, plan.W));
                break;
            }
            default:
                throw UnsupportedError("cannot solve for term " +
                                       format_term(term, Style::plain) + ": " +
                                       plan.diagnostic);
        }
    }
    return finish(D, k, q, std::move(Q));
}

Expr solve_poisson(const Expr& q, std::optional<Coord> forced_m) {
    std::vector<Coefficient> ones(q.space().dims(), Coefficient::one());
    return solve_generalized_polyharmonic(ones, 1, q, forced_m);
}

Expr solve_polyharmonic(int k, const Expr& q) {
    std::vector<Coefficient> ones(q.space().dims(), Coefficient::one());
    return solve_generalized_polyharmonic(ones, k, q);
}

Expr solve_generalized_helmholtz(int j, int k, const Coefficient& nu,
                                 const Expr& q) {
    if (j < 1) throw Error("j must be positive");
    if (k < 1) throw Error("k must be positive");
    if (nu.is_zero()) throw Error("nu must be nonzero");
    if (q.space().has_time)
        throw DimensionError("helmholtz problems are purely spatial");

    GeneralizedHelmholtz problem{q.space().n, j, k, nu};
    LinDiffOp D = make_helmholtz(problem.n, j, nu);
    LinDiffOp A = make_const(q.space(), nu);
    LinDiffOp B = op_pow(make_laplacian(q.space()), j);

    Expr Q = Expr::zero(q.space());
    for (const Term& term : q.terms()) {
        Expr S = Expr::from_terms(q.space(), {term});
        SolutionPlan plan = select_strategy(S, problem);
        switch (plan.route) {
            case SolutionPlan::Route::eigenfunction:
                Q = add(Q, lemma_4_3(D, k, S));
                break;
            case SolutionPlan::Route::annihilator:
                Q = add(Q, theorem_4_1(A, B, k, plan.lambda, plan.W));
                break;
            default:
                throw UnsupportedError("cannot solve for term " +
                                       format_term(term, Style::plain) + ": " +
                                       plan.diagnostic);
        }
    }
    return finish(D, k, q, std::move(Q));
}

}  // namespace annihilant
