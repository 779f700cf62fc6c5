#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "haarlane/newton.hpp"

namespace haarlane {

/// Errors are measured on the fixed 11-point grid t = 0.0, 0.1, ..., 1.0.
std::vector<double> sample_abscissae();

struct SampleRow {
    double t = 0.0;
    double y = 0.0;
    double z = 0.0;
    std::optional<double> y_exact, z_exact, y_err, z_err;
};

struct ErrorReport {
    std::string label;
    int level = 0;
    std::vector<SampleRow> rows;
    std::optional<double> linf_y, linf_z;  // max absolute error over the sample grid
};

ErrorReport make_error_report(const SolutionPair& sp);

/// CSV columns: t,y_computed,z_computed,y_exact,z_exact,y_abserr,z_abserr,
/// then one row per L-infinity value. Values use 6 significant digits and
/// errors scientific notation unless full_precision is set.
void write_solution_csv(std::ostream& out, const ErrorReport& report, bool full_precision);

struct ConvergenceRow {
    int level = 0;
    bool converged = false;
    std::optional<double> linf_y, linf_z;
    std::optional<double> order_y, order_z;  // log2 ratio against the previous level
};

struct ConvergenceReport {
    std::string label;
    std::vector<ConvergenceRow> rows;
    bool all_converged = true;
};

/// Solves the problem independently at each level in [level_from, level_to]
/// and estimates per-step convergence orders. Orders are reported only when
/// both errors in the ratio exceed 10x machine epsilon.
ConvergenceReport run_convergence(const ProblemSpec& spec, int level_from, int level_to,
                                  const NewtonConfig& cfg = {});

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report,
                           bool full_precision);

/// One matrix row per line, comma-separated, full precision.
void write_matrix_csv(std::ostream& out, const Matrix& m);

}  // namespace haarlane
