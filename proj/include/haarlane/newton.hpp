#pragma once

#include <vector>

#include "haarlane/assemble.hpp"
#include "haarlane/linalg.hpp"

namespace haarlane {

enum class JacobianMode { Analytic, FiniteDifference };

struct NewtonConfig {
    double tol_residual = 1e-12;  // infinity norm of the residual
    double tol_step = 1e-14;      // infinity norm of the Newton step
    int max_iter = 100;
    JacobianMode jacobian_mode = JacobianMode::Analytic;
    double fd_step = 1.4901161193847656e-8;  // sqrt(machine epsilon), scaled per column
};

struct NewtonReport {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;  // residual norm at the start of each iteration
};

/// 4M x 4M Jacobian of the collocation residual at c. Analytic mode uses the
/// symbolic partials of f1, f2 composed with the BC reconstruction maps;
/// finite-difference mode uses forward differences column by column.
Matrix jacobian(const ProblemSpec& spec, const CollocationGrid& grid,
                const CoefficientVector& c, JacobianMode mode,
                double fd_step = NewtonConfig{}.fd_step);

struct SolveResult {
    SolutionPair solution;
    NewtonReport report;
};

/// Newton-Raphson on the 4M wavelet coefficients starting from the spec's
/// initial guess. Non-convergence is reported through the flag; a singular
/// Jacobian throws SingularMatrixError tagged with the iteration number.
SolveResult solve(const ProblemSpec& spec, GridPtr grid, const NewtonConfig& cfg = {});

}  // namespace haarlane
