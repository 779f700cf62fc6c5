#include "haarlane/newton.hpp"

#include <cmath>

namespace haarlane {

namespace {

Matrix analytic_jacobian(const ProblemSpec& spec, const CollocationGrid& grid,
                         const CoefficientVector& c) {
    const int n = grid.size();
    const ReconstructionMap map(spec, grid);
    const ExprPtr df1_dy = differentiate(spec.f1, Var::Y);
    const ExprPtr df1_dz = differentiate(spec.f1, Var::Z);
    const ExprPtr df2_dy = differentiate(spec.f2, Var::Y);
    const ExprPtr df2_dz = differentiate(spec.f2, Var::Z);

    Matrix jac(2 * n, 2 * n);
    for (int col = 0; col < n; ++col) {
        const double x = grid.points[col];
        const ReconstructionMap::Values v = map.values_at_point(c, col);
        const EvalPoint p{x, v.y, v.z};
        const double w1 = std::pow(x, -spec.omega1);
        const double w2 = std::pow(x, -spec.omega2);
        const double f1y = w1 * eval(df1_dy, p);
        const double f1z = w1 * eval(df1_dz, p);
        const double f2y = w2 * eval(df2_dy, p);
        const double f2z = w2 * eval(df2_dz, p);
        const double xk1 = std::pow(x, spec.k1);
        const double xk2 = std::pow(x, spec.k2);
        const double g1 = spec.k1 == 0.0 ? 0.0 : spec.k1 * std::pow(x, spec.k1 - 1.0);
        const double g2 = spec.k2 == 0.0 ? 0.0 : spec.k2 * std::pow(x, spec.k2 - 1.0);

        for (int i = 1; i <= n; ++i) {
            const auto s = map.sensitivity(i, x, grid.P1(i - 1, col), grid.P2(i - 1, col));
            const double h = grid.H(i - 1, col);
            jac(col, i - 1) = xk1 * h + g1 * s.dy_a + f1y * s.y_a + f1z * s.z_a;
            jac(col, n + i - 1) = g1 * s.dy_b + f1y * s.y_b + f1z * s.z_b;
            jac(n + col, i - 1) = g2 * s.dz_a + f2y * s.y_a + f2z * s.z_a;
            jac(n + col, n + i - 1) = xk2 * h + g2 * s.dz_b + f2y * s.y_b + f2z * s.z_b;
        }
    }
    return jac;
}

Matrix fd_jacobian(const ProblemSpec& spec, const CollocationGrid& grid,
                   const CoefficientVector& c, double fd_step) {
    const int n4 = 2 * grid.size();
    std::vector<double> u = c.flat();
    const std::vector<double> base = residual(spec, grid, c);

    Matrix jac(n4, n4);
    for (int col = 0; col < n4; ++col) {
        const double saved = u[col];
        const double step = fd_step * std::max(1.0, std::fabs(saved));
        u[col] = saved + step;
        const std::vector<double> bumped = residual(spec, grid, CoefficientVector::from_flat(u));
        u[col] = saved;
        for (int row = 0; row < n4; ++row) {
            jac(row, col) = (bumped[row] - base[row]) / step;
        }
    }
    return jac;
}

CoefficientVector initial_coefficients(const ProblemSpec& spec, const CollocationGrid& grid) {
    const int n = grid.size();
    if (const auto* uniform = std::get_if<double>(&spec.guess)) {
        return CoefficientVector::uniform(n, *uniform);
    }
    const auto& vec = std::get<std::vector<double>>(spec.guess);
    if (static_cast<int>(vec.size()) != 2 * n) {
        throw ProblemError("explicit guess vector has length " + std::to_string(vec.size()) +
                           ", expected " + std::to_string(2 * n));
    }
    return CoefficientVector::from_flat(vec);
}

}  // namespace

Matrix jacobian(const ProblemSpec& spec, const CollocationGrid& grid,
                const CoefficientVector& c, JacobianMode mode, double fd_step) {
    return mode == JacobianMode::Analytic ? analytic_jacobian(spec, grid, c)
                                          : fd_jacobian(spec, grid, c, fd_step);
}

SolveResult solve(const ProblemSpec& spec, GridPtr grid, const NewtonConfig& cfg) {
    if (cfg.tol_residual <= 0.0 || cfg.tol_step <= 0.0 || cfg.max_iter < 1) {
        throw std::invalid_argument("invalid Newton configuration");
    }
    CoefficientVector c = initial_coefficients(spec, *grid);

    NewtonReport report;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        std::vector<double> r = residual(spec, *grid, c);
        const double rnorm = max_abs(r);
        report.residual_history.push_back(rnorm);
        report.iterations = iter;
        if (rnorm <= cfg.tol_residual) {
            report.converged = true;
            report.final_residual = rnorm;
            return {reconstruct(spec, std::move(grid), std::move(c)), report};
        }

        Matrix jac = jacobian(spec, *grid, c, cfg.jacobian_mode, cfg.fd_step);
        for (double& v : r) v = -v;
        std::vector<double> step;
        try {
            step = lu_solve(std::move(jac), std::move(r));
        } catch (const SingularMatrixError& err) {
            throw SingularMatrixError(std::string(err.what()) + " (Newton iteration " +
                                      std::to_string(iter) + ")");
        }
        for (int i = 0; i < c.size2m(); ++i) {
            c.a[i] += step[i];
            c.b[i] += step[c.size2m() + i];
        }
        if (max_abs(step) <= cfg.tol_step) {
            report.converged = true;
            break;
        }
    }
    report.final_residual = max_abs(residual(spec, *grid, c));
    return {reconstruct(spec, std::move(grid), std::move(c)), report};
}

}  // namespace haarlane
