#include "annihilant/helmholtz.hpp"

#include "annihilant/solver.hpp"

namespace annihilant {

Space VectorField::space() const {
    if (components.empty()) throw DimensionError("empty vector field");
    Space sp{dim(), false};
    for (const Expr& c : components)
        if (!(c.space() == sp))
            throw DimensionError(
                "vector field components must live over n spatial coordinates "
                "with n equal to the number of components");
    return sp;
}

VectorField solve_vector_poisson(const VectorField& f) {
    Space sp = f.space();
    VectorField phi;
    phi.components.reserve(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
        try {
            phi.components.push_back(solve_poisson(f.components[i]));
        } catch (const UnsupportedError& ex) {
            throw UnsupportedError("component " + std::to_string(i + 1) + ": " +
                                   ex.what());
        }
    }
    return phi;
}

Potentials build_potentials(const VectorField& phi) {
    Space sp = phi.space();
    int n = phi.dim();

    PotentialMatrix F;
    F.entries.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> row;
        row.reserve(n);
        for (int j = 0; j < n; ++j)
            row.push_back(derivative(phi.components[i], Coord::x(j + 1)));
        F.entries.push_back(std::move(row));
    }

    Expr G = Expr::zero(sp);
    for (int i = 0; i < n; ++i) G = add(G, F.entries[i][i]);

    PotentialMatrix R;
    R.entries.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> row;
        row.reserve(n);
        for (int j = 0; j < n; ++j)
            row.push_back(sub(F.entries[i][j], F.entries[j][i]));
        R.entries.push_back(std::move(row));
    }

    return Potentials{std::move(F), std::move(G), std::move(R)};
}

PotentialFields fields(const PotentialMatrix& F) {
    int n = F.dim();
    if (n == 0) throw DimensionError("empty potential matrix");
    for (const auto& row : F.entries)
        if (static_cast<int>(row.size()) != n)
            throw DimensionError("potential matrix must be square");
    Space sp = F.entries[0][0].space();

    Expr G = Expr::zero(sp);
    for (int i = 0; i < n; ++i) G = add(G, F.entries[i][i]);

    VectorField g, r;
    for (int i = 0; i < n; ++i) {
        g.components.push_back(derivative(G, Coord::x(i + 1)));
        Expr ri = Expr::zero(sp);
        for (int k = 0; k < n; ++k) {
            Expr Rik = sub(F.entries[i][k], F.entries[k][i]);
            ri = add(ri, derivative(Rik, Coord::x(k + 1)));
        }
        r.components.push_back(std::move(ri));
    }
    return PotentialFields{std::move(g), std::move(r)};
}

Decomposition decompose(const VectorField& f) {
    Space sp = f.space();
    VectorField phi = solve_vector_poisson(f);
    Potentials pot = build_potentials(phi);
    PotentialFields gr = fields(pot.F);

    VectorField sum;
    for (int i = 0; i < f.dim(); ++i)
        sum.components.push_back(add(gr.g.components[i], gr.r.components[i]));
    if (!(sum == f))
        throw VerificationError("decomposition does not reconstruct the field");

    Expr div_r = Expr::zero(sp);
    for (int i = 0; i < f.dim(); ++i)
        div_r = add(div_r, derivative(gr.r.components[i], Coord::x(i + 1)));
    if (!div_r.is_zero())
        throw VerificationError("rotation part is not divergence-free");

    for (int i = 0; i < f.dim(); ++i)
        for (int j = i + 1; j < f.dim(); ++j) {
            Expr cross = sub(derivative(gr.g.components[i], Coord::x(j + 1)),
                             derivative(gr.g.components[j], Coord::x(i + 1)));
            if (!cross.is_zero())
                throw VerificationError(
                    "gradient part has an asymmetric Jacobian");
        }

    return Decomposition{std::move(phi), std::move(pot.F), std::move(pot.G),
                         std::move(pot.R), std::move(gr.g), std::move(gr.r)};
}

}  // namespace annihilant
