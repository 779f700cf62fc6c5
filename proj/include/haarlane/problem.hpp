#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "haarlane/expr.hpp"

namespace haarlane {

/// y(0) = gamma1, y'(0) = 0, z(0) = gamma2, z'(0) = 0
struct IvpConditions {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// y'(0) = 0, y(1) = delta1, z'(0) = 0, z(1) = delta2
struct BvpConditions {
    double delta1 = 0.0;
    double delta2 = 0.0;
};

/// y(0) = 0, y(1) = n1 z(v1), z(0) = 0, z(1) = n2 y(v2)
struct FourPointConditions {
    double n1 = 0.0;
    double n2 = 0.0;
    double v1 = 0.5;
    double v2 = 0.5;

    double denominator() const { return 1.0 - n1 * n2 * v1 * v2; }
};

using BoundaryConditions = std::variant<IvpConditions, BvpConditions, FourPointConditions>;

/// Uniform value for all 4M coefficients, or an explicit length-4M vector.
using InitialGuess = std::variant<double, std::vector<double>>;

class ProblemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coupled Lane-Emden problem -(t^k1 y')' = t^-omega1 f1(t,y,z),
/// -(t^k2 z')' = t^-omega2 f2(t,y,z) on (0,1] with one of the three
/// boundary-condition families. Immutable after load.
struct ProblemSpec {
    double k1 = 0.0;
    double k2 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    ExprPtr f1;
    ExprPtr f2;
    BoundaryConditions bc;
    InitialGuess guess = 0.0;
    std::string label;

    // optional closed-form solution (expressions in t) for error reporting
    ExprPtr exact_y;
    ExprPtr exact_z;

    bool has_exact() const { return exact_y != nullptr && exact_z != nullptr; }
    std::pair<double, double> exact_at(double t) const;

    /// Checks k >= 0, omega < 1 and the BC-family invariants; throws ProblemError.
    void validate() const;
};

/// Parses the line-oriented `key = value` problem format. '#' starts a comment.
ProblemSpec load_problem_text(std::string_view text);

/// Reads and parses a problem file from disk.
ProblemSpec load_problem_file(const std::string& path);

}  // namespace haarlane
