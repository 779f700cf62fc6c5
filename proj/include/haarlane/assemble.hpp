#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "haarlane/haar.hpp"
#include "haarlane/problem.hpp"

namespace haarlane {

using GridPtr = std::shared_ptr<const CollocationGrid>;

GridPtr make_grid(int level);

/// The 4M Newton unknowns: coefficients of the y'' and z'' Haar expansions.
struct CoefficientVector {
    std::vector<double> a;
    std::vector<double> b;

    static CoefficientVector uniform(int size2m, double value);
    static CoefficientVector from_flat(std::span<const double> u);

    /// Flattened ordering (a_1..a_2M, b_1..b_2M).
    std::vector<double> flat() const;

    int size2m() const { return static_cast<int>(a.size()); }
};

/// Affine maps from wavelet coefficients to the reconstructed y, y', z, z'
/// of the active boundary-condition family. The boundary identities hold for
/// every coefficient vector by construction.
class ReconstructionMap {
public:
    ReconstructionMap(const ProblemSpec& spec, const CollocationGrid& grid);

    struct Values {
        double y = 0.0, dy = 0.0, z = 0.0, dz = 0.0;
    };

    /// Reconstructed values at collocation point `col` using the grid matrices.
    Values values_at_point(const CoefficientVector& c, int col) const;

    /// Reconstructed values at arbitrary t in [0,1] from the analytic integrals.
    Values values_at(const CoefficientVector& c, double t) const;

    struct Sensitivity {
        double y_a = 0.0, dy_a = 0.0, z_a = 0.0, dz_a = 0.0;
        double y_b = 0.0, dy_b = 0.0, z_b = 0.0, dz_b = 0.0;
    };

    /// Partial derivatives of (y, y', z, z') at abscissa t with respect to
    /// a_i and b_i (1-based i); p1t/p2t are P_{1,i}(t), P_{2,i}(t).
    Sensitivity sensitivity(int i, double t, double p1t, double p2t) const;

    const CollocationGrid& grid() const { return grid_; }

private:
    Values combine(const CoefficientVector& c, double t,
                   std::span<const double> p1t, std::span<const double> p2t) const;

    const CollocationGrid& grid_;
    BoundaryConditions bc_;
    std::vector<double> p2_one_;  // P_{2,i}(1)
    // four-point precomputation: q1_i = P_{2,i}(v1) - v1 P_{2,i}(1), q2 analogous
    std::vector<double> q1_, q2_;
    double inv_den_ = 0.0;  // 1 / (1 - n1 n2 v1 v2)
};

/// Evaluable approximate solution pair with its provenance.
class SolutionPair {
public:
    SolutionPair(ProblemSpec spec, GridPtr grid, CoefficientVector coeffs);

    double y(double t) const;
    double dy(double t) const;
    double z(double t) const;
    double dz(double t) const;

    const ProblemSpec& spec() const { return spec_; }
    const CollocationGrid& grid() const { return *grid_; }
    const CoefficientVector& coeffs() const { return coeffs_; }

private:
    ProblemSpec spec_;
    GridPtr grid_;
    CoefficientVector coeffs_;
    std::shared_ptr<const ReconstructionMap> map_;
};

/// Collocation residual, 4M entries: block c is
/// t^k1 y'' + k1 t^(k1-1) y' + t^-omega1 f1(t, y, z) at x_c, then the z block.
std::vector<double> residual(const ProblemSpec& spec, const CollocationGrid& grid,
                             const CoefficientVector& c);

SolutionPair reconstruct(const ProblemSpec& spec, GridPtr grid, CoefficientVector c);

/// Absolute defects of the four conditions of the active BC family, in the
/// order the family lists them.
std::array<double, 4> boundary_residual(const SolutionPair& sp);

}  // namespace haarlane
