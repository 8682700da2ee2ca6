#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmj {

using Index = std::size_t;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix square(Index n, double fill = 0.0) { return Matrix(n, n, fill); }

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(Index i, Index j) noexcept { return data_[i * cols_ + j]; }
    double operator()(Index i, Index j) const noexcept { return data_[i * cols_ + j]; }

    double& at(Index i, Index j) {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at: index out of range");
        return (*this)(i, j);
    }
    double at(Index i, Index j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix::at: index out of range");
        return (*this)(i, j);
    }

    std::span<double> row(Index i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(Index i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

} // namespace mmj
