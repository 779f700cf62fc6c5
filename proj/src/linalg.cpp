#include "haarlane/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>

namespace haarlane {

std::vector<double> lu_solve(Matrix a, std::vector<double> rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) {
        throw std::invalid_argument("lu_solve: dimension mismatch");
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::fabs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) {
            throw SingularMatrixError("lu_solve: zero pivot in column " + std::to_string(col));
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(perm[col], perm[pivot]);
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) * inv;
            a(r, col) = factor;
            for (std::size_t c = col + 1; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
        }
    }

    // forward substitution on the permuted rhs, L has unit diagonal
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        double s = rhs[perm[r]];
        for (std::size_t c = 0; c < r; ++c) s -= a(r, c) * x[c];
        x[r] = s;
    }
    // back substitution with U
    for (std::size_t r = n; r-- > 0;) {
        double s = x[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
        x[r] = s / a(r, r);
    }
    return x;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace haarlane
