#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "haarlane/examples.hpp"
#include "haarlane/report.hpp"

namespace {

using namespace haarlane;

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("HAARLANE_LOG");
        if (!env) return LogLevel::Info;
        const std::string v(env);
        if (v == "quiet") return LogLevel::Quiet;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

void log_solve(const std::string& label, int level, const NewtonReport& report) {
    if (log_level() >= LogLevel::Info) {
        std::cerr << "haarlane: " << label << " J=" << level
                  << (report.converged ? " converged" : " DID NOT CONVERGE") << " after "
                  << report.iterations << " iterations, residual " << report.final_residual
                  << "\n";
    }
    if (log_level() >= LogLevel::Debug) {
        for (std::size_t i = 0; i < report.residual_history.size(); ++i) {
            std::cerr << "haarlane:   iter " << i + 1 << " |residual| = "
                      << report.residual_history[i] << "\n";
        }
    }
}

struct SolverFlags {
    int level = 3;
    std::optional<double> guess;
    std::optional<std::string> f1, f2;
    std::string out_path;
    std::string precision = "6";
    NewtonConfig newton;

    void attach(CLI::App* cmd, bool with_level = true) {
        if (with_level) {
            cmd->add_option("--level", level, "resolution level J")
                ->required()
                ->check(CLI::Range(0, kMaxGridLevel));
        }
        cmd->add_option("--guess", guess, "uniform initial guess override");
        cmd->add_option("--f1", f1, "override nonlinearity f1(t,y,z)");
        cmd->add_option("--f2", f2, "override nonlinearity f2(t,y,z)");
        cmd->add_option("--tol", newton.tol_residual, "residual tolerance (infinity norm)");
        cmd->add_option("--max-iter", newton.max_iter, "Newton iteration limit");
        cmd->add_option("--jacobian", jacobian_name, "jacobian mode")
            ->check(CLI::IsMember({"analytic", "fd"}));
        cmd->add_option("--out", out_path, "write CSV to a file instead of stdout");
        cmd->add_option("--precision", precision, "number formatting")
            ->check(CLI::IsMember({"6", "full"}));
    }

    void apply_overrides(ProblemSpec& spec) {
        if (guess) spec.guess = *guess;
        if (f1) spec.f1 = parse(*f1);
        if (f2) spec.f2 = parse(*f2);
        if (f1 || f2) spec.validate();
        newton.jacobian_mode =
            jacobian_name == "fd" ? JacobianMode::FiniteDifference : JacobianMode::Analytic;
    }

    bool full_precision() const { return precision == "full"; }

    std::string jacobian_name = "analytic";
};

int write_report(const SolverFlags& flags, const ErrorReport& report, bool converged) {
    if (!flags.out_path.empty()) {
        std::ofstream file(flags.out_path);
        if (!file) {
            std::cerr << "haarlane: output: cannot open '" << flags.out_path << "'\n";
            return 1;
        }
        write_solution_csv(file, report, flags.full_precision());
    } else {
        write_solution_csv(std::cout, report, flags.full_precision());
    }
    return converged ? 0 : 2;
}

int run_problem(ProblemSpec spec, SolverFlags& flags) {
    flags.apply_overrides(spec);
    SolveResult run = solve(spec, make_grid(flags.level), flags.newton);
    log_solve(spec.label, flags.level, run.report);
    return write_report(flags, make_error_report(run.solution), run.report.converged);
}

bool parse_level_range(const std::string& text, int& from, int& to) {
    const auto sep = text.find("..");
    try {
        if (sep == std::string::npos) {
            from = to = std::stoi(text);
        } else {
            from = std::stoi(text.substr(0, sep));
            to = std::stoi(text.substr(sep + 2));
        }
    } catch (const std::exception&) {
        return false;
    }
    return from >= 0 && to >= from && to <= kMaxGridLevel;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haar wavelet collocation solver for coupled singular Lane-Emden systems"};
    app.require_subcommand(1);

    // solve --problem FILE
    auto* solve_cmd = app.add_subcommand("solve", "solve a problem file and report errors");
    std::string problem_path;
    solve_cmd->add_option("--problem", problem_path, "problem definition file")->required();
    SolverFlags solve_flags;
    solve_flags.attach(solve_cmd);

    // example --id N
    auto* example_cmd = app.add_subcommand("example", "solve one of the bundled problems");
    int example_id = 1;
    example_cmd->add_option("--id", example_id, "bundled example id")
        ->required()
        ->check(CLI::Range(1, kNumBuiltinExamples));
    SolverFlags example_flags;
    example_flags.attach(example_cmd);

    // convergence --id N | --problem FILE, --levels A..B
    auto* conv_cmd = app.add_subcommand("convergence", "grid-refinement error study");
    std::optional<int> conv_id;
    std::string conv_problem, levels_text = "1..4";
    conv_cmd->add_option("--id", conv_id, "bundled example id")
        ->check(CLI::Range(1, kNumBuiltinExamples));
    conv_cmd->add_option("--problem", conv_problem, "problem definition file");
    conv_cmd->add_option("--levels", levels_text, "level range, e.g. 1..4");
    SolverFlags conv_flags;
    conv_flags.attach(conv_cmd, /*with_level=*/false);

    // haar-dump --level J --matrix H|P1|P2
    auto* dump_cmd = app.add_subcommand("haar-dump", "print a collocation matrix as CSV");
    int dump_level = 1;
    std::string matrix_name = "H";
    dump_cmd->add_option("--level", dump_level, "resolution level J")
        ->required()
        ->check(CLI::Range(0, kMaxGridLevel));
    dump_cmd->add_option("--matrix", matrix_name, "which matrix to print")
        ->check(CLI::IsMember({"H", "P1", "P2"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd) {
            return run_problem(load_problem_file(problem_path), solve_flags);
        }
        if (*example_cmd) {
            return run_problem(builtin_example(example_id), example_flags);
        }
        if (*conv_cmd) {
            if (conv_id.has_value() == !conv_problem.empty()) {
                std::cerr << "haarlane: input: give exactly one of --id or --problem\n";
                return 1;
            }
            int from = 1, to = 4;
            if (!parse_level_range(levels_text, from, to)) {
                std::cerr << "haarlane: input: bad --levels range '" << levels_text << "'\n";
                return 1;
            }
            ProblemSpec spec = conv_id ? builtin_example(*conv_id)
                                       : load_problem_file(conv_problem);
            conv_flags.apply_overrides(spec);
            const ConvergenceReport report = run_convergence(spec, from, to, conv_flags.newton);
            if (!conv_flags.out_path.empty()) {
                std::ofstream file(conv_flags.out_path);
                if (!file) {
                    std::cerr << "haarlane: output: cannot open '" << conv_flags.out_path
                              << "'\n";
                    return 1;
                }
                write_convergence_csv(file, report, conv_flags.full_precision());
            } else {
                write_convergence_csv(std::cout, report, conv_flags.full_precision());
            }
            return report.all_converged ? 0 : 2;
        }
        if (*dump_cmd) {
            const CollocationGrid grid = build_grid(dump_level);
            const Matrix& m = matrix_name == "P1" ? grid.P1
                            : matrix_name == "P2" ? grid.P2
                                                  : grid.H;
            write_matrix_csv(std::cout, m);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "haarlane: expression: " << e.what() << "\n";
        return 1;
    } catch (const ProblemError& e) {
        std::cerr << "haarlane: problem: " << e.what() << "\n";
        return 1;
    } catch (const EvalError& e) {
        std::cerr << "haarlane: evaluation: " << e.what() << "\n";
        return 1;
    } catch (const SingularMatrixError& e) {
        std::cerr << "haarlane: linear solve: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "haarlane: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
