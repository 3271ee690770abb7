#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "annihilant/operators.hpp"

namespace annihilant {

struct ResidualReport {
    Expr symbolic_residual;
    double numeric_max_abs = 0.0;
    int points_checked = 0;
    bool passed = false;

    std::string to_json() const;
};

inline constexpr double kNumericTolerance = 1e-6;
inline const Rational kDefaultStep = Rational(1, 1000);

// D^k Q - q in canonical form; the zero expression certifies Q.
Expr symbolic_residual(const LinDiffOp& D, int k, const Expr& Q, const Expr& q);

// Max over sampled points of |FD[D^k] Q - q|, where FD replaces every
// derivative by a second-order central difference with step h, evaluated in
// extended precision. Points are random rationals in [-1,1]^n with
// denominator <= 1000, drawn from `seed`.
double numeric_residual(const LinDiffOp& D, int k, const Expr& Q, const Expr& q,
                        int n_points, const Rational& h,
                        const std::map<std::string, Rational>& param_values = {},
                        std::uint64_t seed = 0);

// True iff Q1 and Q2 solve the same inhomogeneity under D^k, i.e. their
// difference is annihilated by D^k.
bool harmonic_difference(const Expr& Q1, const Expr& Q2, const LinDiffOp& D,
                         int k);

// Runs both checks and combines them into one report. When
// `with_numeric` is false (e.g. unbound symbolic parameters) only the
// symbolic residual decides and numeric fields stay at zero points.
ResidualReport verify_solution(const LinDiffOp& D, int k, const Expr& Q,
                               const Expr& q, bool with_numeric = false,
                               int n_points = 10,
                               const Rational& h = kDefaultStep,
                               const std::map<std::string, Rational>& param_values = {},
                               std::uint64_t seed = 0);

}  // namespace annihilant
