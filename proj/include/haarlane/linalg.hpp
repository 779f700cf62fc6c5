#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace haarlane {

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves A x = rhs by LU decomposition with partial pivoting.
/// Throws SingularMatrixError on an exactly zero pivot.
std::vector<double> lu_solve(Matrix a, std::vector<double> rhs);

double max_abs(const std::vector<double>& v);

}  // namespace haarlane
