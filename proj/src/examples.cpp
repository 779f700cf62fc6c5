#include "haarlane/examples.hpp"

namespace haarlane {

namespace {

// Canonical text of the bundled problems; problems/exN.problem ships the
// same bytes (pinned by a test).
const std::string kExampleText[kNumBuiltinExamples] = {
    R"(# Coupled Lane-Emden system with initial conditions; quadratic exact pair.
label = example-1-ivp
k1 = 3
k2 = 2
omega1 = -3
omega2 = -2
f1 = -4*(y+z)
f2 = 3*(y+z)
bc = ivp
gamma1 = 1
gamma2 = 1
guess = 1
exact_y = 1+t^2
exact_z = 1-t^2
)",
    R"(# Coupled Lane-Emden system with initial conditions; algebraic exact pair.
label = example-2-ivp
k1 = 1
k2 = 3
omega1 = -1
omega2 = -3
f1 = -z^3*(y^2+1)
f2 = z^5*(y^2+3)
bc = ivp
gamma1 = 1
gamma2 = 1
guess = 0
exact_y = sqrt(1+t^2)
exact_z = 1/sqrt(1+t^2)
)",
    R"(# Coupled Lane-Emden system with two-point boundary conditions; logarithmic exact pair.
label = example-3-bvp
k1 = 5
k2 = 3
omega1 = -5
omega2 = -3
f1 = 8*(exp(y-1)+2*exp(-(z-1)/2))
f2 = -8*(exp(-(z-1))+exp((y-1)/2))
bc = bvp
delta1 = 1-2*log(2)
delta2 = 1+2*log(2)
guess = 0.8
exact_y = 1-2*log(1+t^2)
exact_z = 1+2*log(1+t^2)
)",
    R"(# Coupled Lane-Emden system with two-point boundary conditions; Gaussian exact pair.
label = example-4-bvp
k1 = 8
k2 = 4
omega1 = -8
omega2 = -4
f1 = 18*y-4*y*log(z)
f2 = 4*z*log(y)-10*z
bc = bvp
delta1 = exp(-1)
delta2 = exp(1)
guess = 0.3
exact_y = exp(-t^2)
exact_z = exp(t^2)
)",
    R"(# Coupled Lane-Emden system with four-point boundary conditions; quadratic exact pair.
label = example-5-fourpoint
k1 = 1/2
k2 = 1/2
omega1 = 1/2
omega2 = 1/2
f1 = 99/35*t - 1/2 + (t^2 - 66/35*t^3 + 1089/1225*t^4)*z - y^2*z
f2 = -24/35*t + 64/1225*t^5 - 2112/42875*t^6 - y*z^2
bc = fourpoint
n1 = 1
n2 = 1
v1 = 1/2
v2 = 1/3
guess = 1.25
exact_y = t - 33/35*t^2
exact_z = 8/35*t^2
)",
    R"(# Coupled Lane-Emden system with four-point boundary conditions; quadratic exact pair.
label = example-6-fourpoint
k1 = 1/2
k2 = 1/2
omega1 = 1/2
omega2 = 1/2
f1 = -283/216 + 67/9*t + (80089/16 - 18961/2*t + 4489*t^2)*(t^2*z^2/729) - y^2*z^2
f2 = -1/3 + 3/2*t + (-67*t + 283/4)^2*(1/4*t^2 - 2/3*t + 4/9)*(t^4/729) - y^2*z^2
bc = fourpoint
n1 = 2/3
n2 = 1/3
v1 = 1/2
v2 = 1/4
guess = 1.75
exact_y = -67/27*t^2 + 283/108*t
exact_z = -1/2*t^2 + 2/3*t
)",
};

constexpr std::array<std::array<double, 2>, kNumBuiltinExamples> kPerturbations = {{
    {1.01, 1.1},
    {0.01, 0.1},
    {0.82, 0.78},
    {0.35, 0.28},
    {1.29, 1.21},
    {1.79, 1.71},
}};

int checked_id(int n) {
    if (n < 1 || n > kNumBuiltinExamples) {
        throw ProblemError("built-in example id must be in 1.." +
                           std::to_string(kNumBuiltinExamples) + ", got " + std::to_string(n));
    }
    return n - 1;
}

}  // namespace

const std::string& builtin_example_text(int n) { return kExampleText[checked_id(n)]; }

ProblemSpec builtin_example(int n) { return load_problem_text(builtin_example_text(n)); }

std::pair<double, double> exact_solution(int n, double t) {
    return builtin_example(n).exact_at(t);
}

std::array<double, 2> guess_perturbations(int n) { return kPerturbations[checked_id(n)]; }

}  // namespace haarlane
