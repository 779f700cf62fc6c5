#include "haarlane/assemble.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace haarlane {

GridPtr make_grid(int level) { return std::make_shared<const CollocationGrid>(build_grid(level)); }

CoefficientVector CoefficientVector::uniform(int size2m, double value) {
    CoefficientVector c;
    c.a.assign(size2m, value);
    c.b.assign(size2m, value);
    return c;
}

CoefficientVector CoefficientVector::from_flat(std::span<const double> u) {
    assert(u.size() % 2 == 0);
    const std::size_t n = u.size() / 2;
    CoefficientVector c;
    c.a.assign(u.begin(), u.begin() + n);
    c.b.assign(u.begin() + n, u.end());
    return c;
}

std::vector<double> CoefficientVector::flat() const {
    std::vector<double> u(a);
    u.insert(u.end(), b.begin(), b.end());
    return u;
}

// ---------------------------------------------------------------------------

ReconstructionMap::ReconstructionMap(const ProblemSpec& spec, const CollocationGrid& grid)
    : grid_(grid), bc_(spec.bc) {
    const int n = grid.size();
    p2_one_.resize(n);
    for (int i = 1; i <= n; ++i) {
        p2_one_[i - 1] = haar_integral(WaveletIndex::from_number(i), 2, 1.0);
    }
    if (const auto* fp = std::get_if<FourPointConditions>(&bc_)) {
        q1_.resize(n);
        q2_.resize(n);
        for (int i = 1; i <= n; ++i) {
            const WaveletIndex idx = WaveletIndex::from_number(i);
            q1_[i - 1] = haar_integral(idx, 2, fp->v1) - fp->v1 * p2_one_[i - 1];
            q2_[i - 1] = haar_integral(idx, 2, fp->v2) - fp->v2 * p2_one_[i - 1];
        }
        inv_den_ = 1.0 / fp->denominator();
    }
}

ReconstructionMap::Values ReconstructionMap::combine(const CoefficientVector& c, double t,
                                                     std::span<const double> p1t,
                                                     std::span<const double> p2t) const {
    const int n = grid_.size();
    Values v;
    if (const auto* ivp = std::get_if<IvpConditions>(&bc_)) {
        v.y = ivp->gamma1;
        v.z = ivp->gamma2;
        for (int i = 0; i < n; ++i) {
            v.y += c.a[i] * p2t[i];
            v.dy += c.a[i] * p1t[i];
            v.z += c.b[i] * p2t[i];
            v.dz += c.b[i] * p1t[i];
        }
        return v;
    }
    if (const auto* bvp = std::get_if<BvpConditions>(&bc_)) {
        v.y = bvp->delta1;
        v.z = bvp->delta2;
        for (int i = 0; i < n; ++i) {
            v.y += c.a[i] * (p2t[i] - p2_one_[i]);
            v.dy += c.a[i] * p1t[i];
            v.z += c.b[i] * (p2t[i] - p2_one_[i]);
            v.dz += c.b[i] * p1t[i];
        }
        return v;
    }
    const auto& fp = std::get<FourPointConditions>(bc_);
    double sa2 = 0.0, sb1 = 0.0;
    for (int i = 0; i < n; ++i) {
        sa2 += c.a[i] * q2_[i];
        sb1 += c.b[i] * q1_[i];
    }
    // bracket terms of the four-point reconstruction
    const double wy = fp.n1 * inv_den_ * (fp.n2 * fp.v1 * sa2 + sb1);
    const double wz = fp.n2 * inv_den_ * (sa2 + fp.v2 * fp.n1 * sb1);
    v.y = wy * t;
    v.dy = wy;
    v.z = wz * t;
    v.dz = wz;
    for (int i = 0; i < n; ++i) {
        v.y += c.a[i] * (p2t[i] - t * p2_one_[i]);
        v.dy += c.a[i] * (p1t[i] - p2_one_[i]);
        v.z += c.b[i] * (p2t[i] - t * p2_one_[i]);
        v.dz += c.b[i] * (p1t[i] - p2_one_[i]);
    }
    return v;
}

ReconstructionMap::Values ReconstructionMap::values_at_point(const CoefficientVector& c,
                                                             int col) const {
    const int n = grid_.size();
    assert(col >= 0 && col < n);
    // columns of P1/P2 as strided spans is not possible row-major; gather once
    thread_local std::vector<double> p1col, p2col;
    p1col.resize(n);
    p2col.resize(n);
    for (int i = 0; i < n; ++i) {
        p1col[i] = grid_.P1(i, col);
        p2col[i] = grid_.P2(i, col);
    }
    return combine(c, grid_.points[col], p1col, p2col);
}

ReconstructionMap::Values ReconstructionMap::values_at(const CoefficientVector& c,
                                                       double t) const {
    const int n = grid_.size();
    std::vector<double> p1t(n), p2t(n);
    for (int i = 1; i <= n; ++i) {
        const WaveletIndex idx = WaveletIndex::from_number(i);
        p1t[i - 1] = haar_integral(idx, 1, t);
        p2t[i - 1] = haar_integral(idx, 2, t);
    }
    return combine(c, t, p1t, p2t);
}

ReconstructionMap::Sensitivity ReconstructionMap::sensitivity(int i, double t, double p1t,
                                                              double p2t) const {
    Sensitivity s;
    const double p2one = p2_one_[i - 1];
    if (std::holds_alternative<IvpConditions>(bc_)) {
        s.y_a = p2t;
        s.dy_a = p1t;
        s.z_b = p2t;
        s.dz_b = p1t;
        return s;
    }
    if (std::holds_alternative<BvpConditions>(bc_)) {
        s.y_a = p2t - p2one;
        s.dy_a = p1t;
        s.z_b = p2t - p2one;
        s.dz_b = p1t;
        return s;
    }
    const auto& fp = std::get<FourPointConditions>(bc_);
    const double q1 = q1_[i - 1];
    const double q2 = q2_[i - 1];
    const double base = p2t - t * p2one;
    const double dbase = p1t - p2one;
    s.y_a = base + fp.n1 * inv_den_ * fp.n2 * fp.v1 * q2 * t;
    s.dy_a = dbase + fp.n1 * inv_den_ * fp.n2 * fp.v1 * q2;
    s.y_b = fp.n1 * inv_den_ * q1 * t;
    s.dy_b = fp.n1 * inv_den_ * q1;
    s.z_a = fp.n2 * inv_den_ * q2 * t;
    s.dz_a = fp.n2 * inv_den_ * q2;
    s.z_b = base + fp.n2 * inv_den_ * fp.v2 * fp.n1 * q1 * t;
    s.dz_b = dbase + fp.n2 * inv_den_ * fp.v2 * fp.n1 * q1;
    return s;
}

// ---------------------------------------------------------------------------

SolutionPair::SolutionPair(ProblemSpec spec, GridPtr grid, CoefficientVector coeffs)
    : spec_(std::move(spec)),
      grid_(std::move(grid)),
      coeffs_(std::move(coeffs)),
      map_(std::make_shared<const ReconstructionMap>(spec_, *grid_)) {
    assert(coeffs_.size2m() == grid_->size());
}

double SolutionPair::y(double t) const { return map_->values_at(coeffs_, t).y; }
double SolutionPair::dy(double t) const { return map_->values_at(coeffs_, t).dy; }
double SolutionPair::z(double t) const { return map_->values_at(coeffs_, t).z; }
double SolutionPair::dz(double t) const { return map_->values_at(coeffs_, t).dz; }

SolutionPair reconstruct(const ProblemSpec& spec, GridPtr grid, CoefficientVector c) {
    return SolutionPair(spec, std::move(grid), std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

// k t^(k-1) y' computed as an explicit branch so k = 0 never forms 0 * t^-1
double singular_term(double k, double t, double dv) {
    return k == 0.0 ? 0.0 : k * std::pow(t, k - 1.0) * dv;
}

}  // namespace

std::vector<double> residual(const ProblemSpec& spec, const CollocationGrid& grid,
                             const CoefficientVector& c) {
    const int n = grid.size();
    if (c.size2m() != n) throw std::invalid_argument("coefficient count does not match grid");
    const ReconstructionMap map(spec, grid);

    std::vector<double> r(2 * n);
    for (int col = 0; col < n; ++col) {
        const double x = grid.points[col];
        const ReconstructionMap::Values v = map.values_at_point(c, col);
        double ypp = 0.0, zpp = 0.0;
        for (int i = 0; i < n; ++i) {
            ypp += c.a[i] * grid.H(i, col);
            zpp += c.b[i] * grid.H(i, col);
        }
        try {
            const EvalPoint p{x, v.y, v.z};
            r[col] = std::pow(x, spec.k1) * ypp + singular_term(spec.k1, x, v.dy) +
                     std::pow(x, -spec.omega1) * eval(spec.f1, p);
            r[n + col] = std::pow(x, spec.k2) * zpp + singular_term(spec.k2, x, v.dz) +
                         std::pow(x, -spec.omega2) * eval(spec.f2, p);
        } catch (const EvalError& err) {
            throw EvalError("at collocation point " + std::to_string(col + 1) + " (t=" +
                                std::to_string(x) + "): " + err.what(),
                            err.subexpression());
        }
    }
    return r;
}

std::array<double, 4> boundary_residual(const SolutionPair& sp) {
    const ProblemSpec& spec = sp.spec();
    if (const auto* ivp = std::get_if<IvpConditions>(&spec.bc)) {
        return {std::fabs(sp.y(0.0) - ivp->gamma1), std::fabs(sp.dy(0.0)),
                std::fabs(sp.z(0.0) - ivp->gamma2), std::fabs(sp.dz(0.0))};
    }
    if (const auto* bvp = std::get_if<BvpConditions>(&spec.bc)) {
        return {std::fabs(sp.dy(0.0)), std::fabs(sp.y(1.0) - bvp->delta1),
                std::fabs(sp.dz(0.0)), std::fabs(sp.z(1.0) - bvp->delta2)};
    }
    const auto& fp = std::get<FourPointConditions>(spec.bc);
    return {std::fabs(sp.y(0.0)), std::fabs(sp.y(1.0) - fp.n1 * sp.z(fp.v1)),
            std::fabs(sp.z(0.0)), std::fabs(sp.z(1.0) - fp.n2 * sp.y(fp.v2))};
}

}  // namespace haarlane
