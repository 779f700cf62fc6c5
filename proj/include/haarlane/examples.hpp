#pragma once

#include <array>
#include <string>
#include <utility>

#include "haarlane/problem.hpp"

namespace haarlane {

inline constexpr int kNumBuiltinExamples = 6;

/// The six bundled benchmark problems, n in 1..6. Throws ProblemError for
/// an out-of-range id.
ProblemSpec builtin_example(int n);

/// Canonical problem-file text of example n (identical to problems/exN.problem).
const std::string& builtin_example_text(int n);

/// Closed-form solution of example n at t.
std::pair<double, double> exact_solution(int n, double t);

/// Alternate uniform initial guesses used by the stability checks.
std::array<double, 2> guess_perturbations(int n);

}  // namespace haarlane
