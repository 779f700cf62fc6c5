#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "haarlane/examples.hpp"
#include "haarlane/newton.hpp"
#include "haarlane/report.hpp"

using namespace haarlane;

TEST_CASE("lu_solve basics") {
    Matrix eye(3, 3);
    for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
    const std::vector<double> rhs{1.0, -2.0, 3.5};
    CHECK(lu_solve(eye, rhs) == rhs);

    Matrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const std::vector<double> x = lu_solve(swap, {1.0, 2.0});
    CHECK(x[0] == 2.0);
    CHECK(x[1] == 1.0);
}

TEST_CASE("lu_solve recovers a known solution of a random dense system") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 50;
    Matrix a(n, n);
    std::vector<double> x_true(n);
    for (int i = 0; i < n; ++i) {
        x_true[i] = u(rng);
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        a(i, i) += 4.0;  // keep the system well-conditioned
    }
    std::vector<double> rhs(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) rhs[i] += a(i, j) * x_true[j];
    }
    const std::vector<double> x = lu_solve(a, rhs);
    for (int i = 0; i < n; ++i) {
        CHECK(std::fabs(x[i] - x_true[i]) <= 1e-8 * std::max(1.0, std::fabs(x_true[i])));
    }

    double rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        double ax = 0.0;
        for (int j = 0; j < n; ++j) ax += a(i, j) * x[j];
        rnorm = std::max(rnorm, std::fabs(ax - rhs[i]));
    }
    CHECK(rnorm <= 1e-8 * (1.0 + max_abs(rhs)));
}

TEST_CASE("lu_solve reports singular matrices") {
    Matrix singular(2, 2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK_THROWS_AS(lu_solve(singular, {1.0, 1.0}), SingularMatrixError);
    CHECK_THROWS_AS(lu_solve(Matrix(3, 3), {1.0, 1.0, 1.0}), SingularMatrixError);
    CHECK_THROWS_AS(lu_solve(Matrix(2, 3), {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("analytic and finite-difference Jacobians agree") {
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const ProblemSpec spec = builtin_example(n);
        const GridPtr grid = make_grid(2);
        const CoefficientVector c =
            CoefficientVector::uniform(grid->size(), std::get<double>(spec.guess));
        const Matrix ja = jacobian(spec, *grid, c, JacobianMode::Analytic);
        const Matrix jf = jacobian(spec, *grid, c, JacobianMode::FiniteDifference);
        double scale = 0.0, diff = 0.0;
        for (std::size_t r = 0; r < ja.rows(); ++r) {
            for (std::size_t s = 0; s < ja.cols(); ++s) {
                scale = std::max(scale, std::fabs(ja(r, s)));
                diff = std::max(diff, std::fabs(ja(r, s) - jf(r, s)));
            }
        }
        CHECK(diff <= 1e-6 * (1.0 + scale));
    }
}

TEST_CASE("Jacobian of a linear problem is independent of the coefficients") {
    const ProblemSpec spec = builtin_example(1);  // f1, f2 linear in y and z
    const GridPtr grid = make_grid(2);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    CoefficientVector c1 = CoefficientVector::uniform(grid->size(), 0.0);
    CoefficientVector c2 = c1;
    for (int i = 0; i < grid->size(); ++i) {
        c1.a[i] = u(rng);
        c1.b[i] = u(rng);
        c2.a[i] = u(rng);
        c2.b[i] = u(rng);
    }
    const Matrix j1 = jacobian(spec, *grid, c1, JacobianMode::Analytic);
    const Matrix j2 = jacobian(spec, *grid, c2, JacobianMode::Analytic);
    CHECK(std::memcmp(j1.data(), j2.data(), sizeof(double) * j1.rows() * j1.cols()) == 0);
}

TEST_CASE("with vanishing nonlinearities the Jacobian reduces to the wavelet patterns") {
    ProblemSpec spec = builtin_example(1);
    spec.f1 = Expr::constant(0.0);
    spec.f2 = Expr::constant(0.0);
    spec.k1 = 2.5;
    spec.k2 = 0.0;  // exercises the k = 0 branch
    const GridPtr grid = make_grid(2);
    const int n = grid->size();
    const CoefficientVector c = CoefficientVector::uniform(n, 0.3);
    const Matrix jac = jacobian(spec, *grid, c, JacobianMode::Analytic);
    for (int col = 0; col < n; ++col) {
        const double x = grid->points[col];
        for (int i = 0; i < n; ++i) {
            const double expected_a = std::pow(x, spec.k1) * grid->H(i, col) +
                                      spec.k1 * std::pow(x, spec.k1 - 1) * grid->P1(i, col);
            CHECK(jac(col, i) == doctest::Approx(expected_a).epsilon(1e-14));
            CHECK(jac(col, n + i) == 0.0);
            CHECK(jac(n + col, i) == 0.0);
            CHECK(jac(n + col, n + i) == grid->H(i, col));  // x^0 H, no k term
        }
    }
}

TEST_CASE("example 1 solves to the exact quadratic pair") {
    const SolveResult run = solve(builtin_example(1), make_grid(3));
    REQUIRE(run.report.converged);
    CHECK(run.solution.y(0.5) == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(run.solution.z(0.5) == doctest::Approx(0.75).epsilon(1e-13));
    for (double t : sample_abscissae()) {
        const auto [ye, ze] = exact_solution(1, t);
        CHECK(std::fabs(run.solution.y(t) - ye) <= 1e-12);
        CHECK(std::fabs(run.solution.z(t) - ze) <= 1e-12);
    }
}

TEST_CASE("example 2 at J=4 reproduces the published error level") {
    const SolveResult run = solve(builtin_example(2), make_grid(4));
    REQUIRE(run.report.converged);
    const ErrorReport report = make_error_report(run.solution);
    REQUIRE(report.linf_y.has_value());
    CHECK(*report.linf_y == doctest::Approx(6.88e-6).epsilon(0.25));
    CHECK(*report.linf_z == doctest::Approx(3.29e-5).epsilon(0.25));
}

TEST_CASE("example 6 at J=3 is exact to roundoff") {
    const SolveResult run = solve(builtin_example(6), make_grid(3));
    REQUIRE(run.report.converged);
    const ErrorReport report = make_error_report(run.solution);
    CHECK(*report.linf_y <= 1e-10);
    CHECK(*report.linf_z <= 1e-10);
}

TEST_CASE("solves are deterministic") {
    const SolveResult a = solve(builtin_example(3), make_grid(3));
    const SolveResult b = solve(builtin_example(3), make_grid(3));
    const std::vector<double> ua = a.solution.coeffs().flat();
    const std::vector<double> ub = b.solution.coeffs().flat();
    REQUIRE(ua.size() == ub.size());
    CHECK(std::memcmp(ua.data(), ub.data(), ua.size() * sizeof(double)) == 0);
}

TEST_CASE("perturbed initial guesses land on the same solution") {
    const GridPtr grid = make_grid(3);
    ProblemSpec spec = builtin_example(2);
    const SolveResult base = solve(spec, grid);
    REQUIRE(base.report.converged);
    for (double g : guess_perturbations(2)) {
        spec.guess = g;
        const SolveResult run = solve(spec, grid);
        REQUIRE(run.report.converged);
        for (double t : sample_abscissae()) {
            CHECK(std::fabs(run.solution.y(t) - base.solution.y(t)) <= 1e-9);
            CHECK(std::fabs(run.solution.z(t) - base.solution.z(t)) <= 1e-9);
        }
    }
}

TEST_CASE("a residual-norm pair witnesses locally superlinear convergence") {
    const SolveResult run = solve(builtin_example(2), make_grid(3));
    REQUIRE(run.report.converged);
    const std::vector<double>& h = run.report.residual_history;
    bool witnessed = false;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        if (h[i] > 0.0 && h[i] <= 1e-3 && h[i + 1] <= 10.0 * std::pow(h[i], 1.5)) {
            witnessed = true;
        }
    }
    CHECK(witnessed);
}

TEST_CASE("non-convergence is flagged, not thrown") {
    NewtonConfig cfg;
    cfg.max_iter = 1;
    const SolveResult run = solve(builtin_example(3), make_grid(3), cfg);
    CHECK_FALSE(run.report.converged);
    CHECK(run.report.iterations == 1);
    CHECK(run.report.final_residual > cfg.tol_residual);
    CHECK(run.report.residual_history.size() == 1);
}

TEST_CASE("explicit guess vectors must match the unknown count") {
    ProblemSpec spec = builtin_example(1);
    spec.guess = std::vector<double>{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(solve(spec, make_grid(2)), ProblemError);

    const GridPtr grid = make_grid(1);  // 4M = 8 unknowns
    spec.guess = std::vector<double>(8, 1.0);
    const SolveResult run = solve(spec, grid);
    CHECK(run.report.converged);
}

TEST_CASE("invalid Newton configuration is rejected") {
    NewtonConfig cfg;
    cfg.max_iter = 0;
    CHECK_THROWS_AS(solve(builtin_example(1), make_grid(1), cfg), std::invalid_argument);
}
