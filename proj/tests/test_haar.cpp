#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "haarlane/haar.hpp"

using namespace haarlane;

namespace {

// composite midpoint rule with panels of width 2^-14; x must be a multiple of
// the panel width so that every dyadic breakpoint lands on a panel boundary
double midpoint_quadrature(const std::function<double(double)>& f, double x) {
    const double h = std::ldexp(1.0, -14);
    const long long panels = std::llround(x / h);
    double acc = 0.0;
    for (long long p = 0; p < panels; ++p) acc += f((p + 0.5) * h);
    return acc * h;
}

}  // namespace

TEST_CASE("wavelet numbering follows i = 2^j + k + 1") {
    const WaveletIndex one = WaveletIndex::from_number(1);
    CHECK(one.i == 1);

    for (int i = 2; i <= 64; ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        CHECK(idx.i == (1 << idx.j) + idx.k + 1);
        CHECK(idx.k >= 0);
        CHECK(idx.k < (1 << idx.j));
    }
    CHECK_THROWS_AS(WaveletIndex::from_number(0), std::domain_error);
    CHECK_THROWS_AS(WaveletIndex::from_number(-3), std::domain_error);
}

TEST_CASE("support breakpoints") {
    const Support s2 = support_of(WaveletIndex::from_number(2));
    CHECK(s2.eta1 == 0.0);
    CHECK(s2.eta2 == 0.5);
    CHECK(s2.eta3 == 1.0);

    // width eta3 - eta1 = 2^-j, half-width spacing exact
    for (int i = 2; i <= 32; ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        const Support s = support_of(idx);
        const double width = std::ldexp(1.0, -idx.j);
        CHECK(s.eta3 - s.eta1 == width);
        CHECK(s.eta2 - s.eta1 == s.eta3 - s.eta2);
    }
}

TEST_CASE("haar_eval point values") {
    CHECK(haar_eval(WaveletIndex::from_number(1), 0.7) == 1.0);
    CHECK(haar_eval(WaveletIndex::from_number(2), 0.25) == 1.0);
    CHECK(haar_eval(WaveletIndex::from_number(2), 0.75) == -1.0);
    CHECK(haar_eval(WaveletIndex::from_number(3), 0.9) == 0.0);

    // half-open convention at the breakpoints
    const WaveletIndex i2 = WaveletIndex::from_number(2);
    CHECK(haar_eval(i2, 0.0) == 1.0);
    CHECK(haar_eval(i2, 0.5) == -1.0);
    CHECK(haar_eval(i2, 1.0) == 0.0);
}

TEST_CASE("haar_integral closed forms") {
    CHECK(haar_integral(WaveletIndex::from_number(1), 2, 0.5) == 0.125);
    CHECK(haar_integral(WaveletIndex::from_number(2), 1, 0.75) == 0.25);
    CHECK(haar_integral(WaveletIndex::from_number(3), 2, 1.0) == 0.0625);  // 1/16
    CHECK_THROWS_AS(haar_integral(WaveletIndex::from_number(1), 0, 0.5), std::domain_error);
}

TEST_CASE("haar_integral agrees with midpoint quadrature") {
    const CollocationGrid grid = build_grid(3);
    std::vector<double> abscissae = grid.points;
    abscissae.push_back(0.75);
    abscissae.push_back(1.0);

    for (int i = 1; i <= grid.size(); ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        for (double x : abscissae) {
            const double q1 = midpoint_quadrature([&](double s) { return haar_eval(idx, s); }, x);
            CHECK(std::fabs(haar_integral(idx, 1, x) - q1) <= 1e-8);
            const double q2 =
                midpoint_quadrature([&](double s) { return haar_integral(idx, 1, s); }, x);
            CHECK(std::fabs(haar_integral(idx, 2, x) - q2) <= 1e-8);
        }
    }
}

TEST_CASE("J=1 grid matches the published matrices") {
    const CollocationGrid grid = build_grid(1);
    REQUIRE(grid.size() == 4);
    const double expected_points[4] = {1.0 / 8, 3.0 / 8, 5.0 / 8, 7.0 / 8};
    for (int c = 0; c < 4; ++c) CHECK(grid.points[c] == expected_points[c]);

    const double H[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 0, 0}, {0, 0, 1, -1}};
    const double P1[4][4] = {{1, 3, 5, 7}, {1, 3, 3, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    const double P2[4][4] = {{1, 9, 25, 49}, {1, 9, 23, 31}, {1, 7, 8, 8}, {0, 0, 1, 7}};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            CHECK(grid.H(r, c) == H[r][c]);
            CHECK(grid.P1(r, c) == P1[r][c] / 8.0);
            CHECK(grid.P2(r, c) == P2[r][c] / 128.0);
        }
    }
}

TEST_CASE("discrete orthogonality: H H^T diagonal in integer arithmetic") {
    for (int level = 0; level <= 4; ++level) {
        const CollocationGrid grid = build_grid(level);
        const int n = grid.size();
        for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
                long long dot = 0;
                for (int c = 0; c < n; ++c) {
                    dot += static_cast<long long>(grid.H(r, c)) *
                           static_cast<long long>(grid.H(s, c));
                }
                if (r != s) {
                    CHECK(dot == 0);
                } else if (r == 0) {
                    CHECK(dot == n);
                } else {
                    const WaveletIndex idx = WaveletIndex::from_number(r + 1);
                    CHECK(dot == n >> idx.j);
                }
            }
        }
    }
}

TEST_CASE("P2 is nondecreasing and bounded by 4^-(j+1)") {
    for (int i = 2; i <= 16; ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        const double bound = std::ldexp(1.0, -2 * (idx.j + 1));
        double prev = 0.0;
        for (int s = 0; s <= 4096; ++s) {
            const double x = s / 4096.0;
            const double v = haar_integral(idx, 2, x);
            CHECK(v >= prev);
            CHECK(v <= bound);
            prev = v;
        }
        CHECK(haar_integral(idx, 2, 1.0) == bound);
    }
}

TEST_CASE("grid level limits") {
    CHECK_THROWS_AS(build_grid(-1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(kMaxGridLevel + 1), std::invalid_argument);

    const CollocationGrid big = build_grid(10);
    CHECK(big.size() == 2048);
    CHECK(big.points[0] == 1.0 / 4096);
    CHECK(big.H(0, 2047) == 1.0);
    CHECK(big.P1(0, 0) == big.points[0]);
}
