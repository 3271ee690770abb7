#pragma once

#include <vector>

#include "annihilant/expr.hpp"

namespace annihilant {

// An n-dimensional vector field over n purely spatial coordinates.
struct VectorField {
    std::vector<Expr> components;

    Space space() const;
    int dim() const { return static_cast<int>(components.size()); }

    friend bool operator==(const VectorField&, const VectorField&) = default;
};

// n x n matrix of expressions; entries[i][j] holds F_ij (0-based).
struct PotentialMatrix {
    std::vector<std::vector<Expr>> entries;

    int dim() const { return static_cast<int>(entries.size()); }

    friend bool operator==(const PotentialMatrix&, const PotentialMatrix&) = default;
};

struct Potentials {
    PotentialMatrix F;  // F_ij = d(phi_i)/dx_j
    Expr G;             // trace of F
    PotentialMatrix R;  // F - F^T (antisymmetric)
};

struct Decomposition {
    VectorField phi;
    PotentialMatrix F;
    Expr G;
    PotentialMatrix R;
    VectorField g;  // gradient part, g = grad G
    VectorField r;  // rotation part, divergence-free
};

// Componentwise Poisson solve: returns phi with Laplacian(phi_i) = f_i.
// An unsupported component raises UnsupportedError naming its index.
VectorField solve_vector_poisson(const VectorField& f);

Potentials build_potentials(const VectorField& phi);

struct PotentialFields {
    VectorField g;
    VectorField r;
};

// g_i = d/dx_i (trace F); r_i = sum_k d/dx_k (F_ik - F_ki). Works for any
// potential matrix, not only those built from a vector potential.
PotentialFields fields(const PotentialMatrix& F);

// Full decomposition f = g + r with div r = 0 and g a gradient field.
// All three certificates (reconstruction, solenoidality, symmetry of the
// Jacobian of g) are checked symbolically; failure raises VerificationError.
Decomposition decompose(const VectorField& f);

}  // namespace annihilant
