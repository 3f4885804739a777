#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace sympca {

// Dense row-major matrix of doubles. Sized for desk-scale problems; every
// operation checks shapes and throws ContractError on mismatch.
class Matrix {
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double value = 0.0);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    Matrix transposed() const;

    // Copy of the columns picked by `indices`, in the given order.
    Matrix columns(std::span<const int> indices) const;
    Matrix leading_columns(std::size_t count) const;

    std::vector<double> diagonal_vector() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double factor);

    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double factor, Matrix m);
Matrix operator-(Matrix m);

// M * diag(factors): scales column j by factors[j].
Matrix scale_columns(const Matrix& m, std::span<const double> factors);

double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace sympca
