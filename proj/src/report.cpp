#include "haarlane/report.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>

namespace haarlane {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string value_str(double v, bool full) { return fmt(full ? "%.17g" : "%.6g", v); }
std::string error_str(double v, bool full) { return fmt(full ? "%.17e" : "%.5e", v); }

std::string opt_value(const std::optional<double>& v, bool full) {
    return v ? value_str(*v, full) : std::string();
}

std::string opt_error(const std::optional<double>& v, bool full) {
    return v ? error_str(*v, full) : std::string();
}

}  // namespace

std::vector<double> sample_abscissae() {
    std::vector<double> t(11);
    for (int i = 0; i <= 10; ++i) t[i] = i / 10.0;
    return t;
}

ErrorReport make_error_report(const SolutionPair& sp) {
    ErrorReport report;
    report.label = sp.spec().label;
    report.level = sp.grid().level;
    const bool exact = sp.spec().has_exact();
    for (double t : sample_abscissae()) {
        SampleRow row;
        row.t = t;
        row.y = sp.y(t);
        row.z = sp.z(t);
        if (exact) {
            const auto [ye, ze] = sp.spec().exact_at(t);
            row.y_exact = ye;
            row.z_exact = ze;
            row.y_err = std::fabs(ye - row.y);
            row.z_err = std::fabs(ze - row.z);
        }
        report.rows.push_back(row);
    }
    if (exact) {
        double ly = 0.0, lz = 0.0;
        for (const SampleRow& row : report.rows) {
            ly = std::max(ly, *row.y_err);
            lz = std::max(lz, *row.z_err);
        }
        report.linf_y = ly;
        report.linf_z = lz;
    }
    return report;
}

void write_solution_csv(std::ostream& out, const ErrorReport& report, bool full_precision) {
    out << "t,y_computed,z_computed,y_exact,z_exact,y_abserr,z_abserr\n";
    for (const SampleRow& row : report.rows) {
        out << value_str(row.t, full_precision) << ',' << value_str(row.y, full_precision)
            << ',' << value_str(row.z, full_precision) << ','
            << opt_value(row.y_exact, full_precision) << ','
            << opt_value(row.z_exact, full_precision) << ','
            << opt_error(row.y_err, full_precision) << ','
            << opt_error(row.z_err, full_precision) << '\n';
    }
    out << "Linf_y," << opt_error(report.linf_y, full_precision) << '\n';
    out << "Linf_z," << opt_error(report.linf_z, full_precision) << '\n';
}

ConvergenceReport run_convergence(const ProblemSpec& spec, int level_from, int level_to,
                                  const NewtonConfig& cfg) {
    if (level_from > level_to) throw std::invalid_argument("empty level range");
    ConvergenceReport report;
    report.label = spec.label;

    constexpr double kFloor = 10.0 * DBL_EPSILON;  // below this, errors are roundoff
    std::optional<double> prev_y, prev_z;
    for (int level = level_from; level <= level_to; ++level) {
        SolveResult run = solve(spec, make_grid(level), cfg);
        const ErrorReport errors = make_error_report(run.solution);

        ConvergenceRow row;
        row.level = level;
        row.converged = run.report.converged;
        row.linf_y = errors.linf_y;
        row.linf_z = errors.linf_z;
        if (!run.report.converged) report.all_converged = false;
        if (prev_y && row.linf_y && *prev_y > kFloor && *row.linf_y > kFloor) {
            row.order_y = std::log2(*prev_y / *row.linf_y);
        }
        if (prev_z && row.linf_z && *prev_z > kFloor && *row.linf_z > kFloor) {
            row.order_z = std::log2(*prev_z / *row.linf_z);
        }
        prev_y = row.linf_y;
        prev_z = row.linf_z;
        report.rows.push_back(row);
    }
    return report;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report,
                           bool full_precision) {
    out << "J,Linf_y,Linf_z,order_y,order_z,converged\n";
    for (const ConvergenceRow& row : report.rows) {
        out << row.level << ',' << opt_error(row.linf_y, full_precision) << ','
            << opt_error(row.linf_z, full_precision) << ','
            << opt_value(row.order_y, full_precision) << ','
            << opt_value(row.order_z, full_precision) << ','
            << (row.converged ? 1 : 0) << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << fmt("%.17g", m(r, c));
        }
        out << '\n';
    }
}

}  // namespace haarlane
