#include "haarlane/haar.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace haarlane {

namespace {

// x^v for small non-negative integer v
double int_pow(double x, int v) {
    double r = 1.0;
    for (int n = 0; n < v; ++n) r *= x;
    return r;
}

double factorial(int v) {
    double r = 1.0;
    for (int n = 2; n <= v; ++n) r *= n;
    return r;
}

}  // namespace

WaveletIndex WaveletIndex::from_number(int i) {
    if (i < 1) {
        throw std::domain_error("wavelet number must be >= 1, got " + std::to_string(i));
    }
    WaveletIndex idx;
    idx.i = i;
    if (i >= 2) {
        const unsigned m = std::bit_floor(static_cast<unsigned>(i - 1));
        idx.j = std::countr_zero(m);
        idx.k = i - static_cast<int>(m) - 1;
    }
    return idx;
}

Support support_of(const WaveletIndex& idx) {
    // exact: denominators are powers of two
    const double m = static_cast<double>(1 << idx.j);
    const double half = 0.5 / m;
    Support s;
    s.eta1 = idx.k / m;
    s.eta2 = s.eta1 + half;
    s.eta3 = s.eta1 + 2.0 * half;
    return s;
}

double haar_eval(const WaveletIndex& idx, double x) {
    if (idx.i < 1) throw std::domain_error("invalid wavelet index");
    if (idx.i == 1) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    const Support s = support_of(idx);
    if (x >= s.eta1 && x < s.eta2) return 1.0;
    if (x >= s.eta2 && x < s.eta3) return -1.0;
    return 0.0;
}

double haar_integral(const WaveletIndex& idx, int order, double x) {
    if (idx.i < 1) throw std::domain_error("invalid wavelet index");
    if (order < 1) throw std::domain_error("integration order must be >= 1");
    const double vfac = factorial(order);
    if (idx.i == 1) return int_pow(x, order) / vfac;

    const Support s = support_of(idx);
    if (x < s.eta1) return 0.0;
    double acc = int_pow(x - s.eta1, order);
    if (x > s.eta2) acc -= 2.0 * int_pow(x - s.eta2, order);
    if (x > s.eta3) acc += int_pow(x - s.eta3, order);
    return acc / vfac;
}

CollocationGrid build_grid(int level) {
    if (level < 0 || level > kMaxGridLevel) {
        throw std::invalid_argument("grid level must be in [0, " +
                                    std::to_string(kMaxGridLevel) + "], got " +
                                    std::to_string(level));
    }
    CollocationGrid grid;
    grid.level = level;
    grid.half_size = 1 << level;
    const int n = grid.size();

    grid.points.resize(n);
    for (int c = 1; c <= n; ++c) {
        // (2c-1)/(4M), exact dyadic midpoint of cell c
        grid.points[c - 1] = static_cast<double>(2 * c - 1) / static_cast<double>(2 * n);
    }

    grid.H = Matrix(n, n);
    grid.P1 = Matrix(n, n);
    grid.P2 = Matrix(n, n);
    for (int i = 1; i <= n; ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        for (int c = 0; c < n; ++c) {
            const double x = grid.points[c];
            grid.H(i - 1, c) = haar_eval(idx, x);
            grid.P1(i - 1, c) = haar_integral(idx, 1, x);
            grid.P2(i - 1, c) = haar_integral(idx, 2, x);
        }
    }
    return grid;
}

}  // namespace haarlane
