#pragma once

#include <vector>

#include "haarlane/linalg.hpp"

namespace haarlane {

/// Identifies a Haar basis function on [0,1].
/// i = 1 is the scaling function; for i >= 2, i = 2^j + k + 1 with
/// dilation level j >= 0 and translation 0 <= k < 2^j.
struct WaveletIndex {
    int i = 1;
    int j = 0;
    int k = 0;

    /// Decomposes a 1-based wavelet number. Throws std::domain_error for i < 1.
    static WaveletIndex from_number(int i);
};

/// Support breakpoints of a wavelet with i >= 2: +1 on [eta1, eta2), -1 on [eta2, eta3).
struct Support {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
};

/// Breakpoints (k/m, (k+0.5)/m, (k+1)/m) with m = 2^j; exact dyadic rationals.
Support support_of(const WaveletIndex& idx);

/// Value of the Haar function h_i at x, in {-1, 0, 1}.
double haar_eval(const WaveletIndex& idx, double x);

/// v-fold integral of h_i from 0 to x, evaluated from the closed
/// piecewise-polynomial form. Requires order >= 1.
double haar_integral(const WaveletIndex& idx, int order, double x);

/// Collocation grid at resolution level J: the 2M midpoints of uniform cells
/// (M = 2^J) and the sampled matrices H, P1, P2 with row = wavelet number,
/// column = collocation point. Immutable after construction.
struct CollocationGrid {
    int level = 0;      // J
    int half_size = 1;  // M = 2^J
    std::vector<double> points;
    Matrix H, P1, P2;

    int size() const { return 2 * half_size; }  // 2M
};

inline constexpr int kMaxGridLevel = 10;

/// Builds the grid for 0 <= level <= kMaxGridLevel; throws std::invalid_argument
/// outside that range (dense storage grows as 4^level).
CollocationGrid build_grid(int level);

}  // namespace haarlane
