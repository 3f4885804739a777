#include "sympca/matrix.hpp"

#include <cmath>
#include <string>

#include "sympca/errors.hpp"

namespace sympca {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractError(std::string(op) + ": shape mismatch (" +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + ")");
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {
    if (rows == 0 || cols == 0) {
        throw ContractError("matrix dimensions must be at least 1x1");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix result(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            result(j, i) = (*this)(i, j);
        }
    }
    return result;
}

Matrix Matrix::columns(std::span<const int> indices) const {
    if (indices.empty()) {
        throw ContractError("columns: empty selection");
    }
    Matrix result(rows_, indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const int idx = indices[j];
        if (idx < 0 || static_cast<std::size_t>(idx) >= cols_) {
            throw ContractError("columns: index " + std::to_string(idx) + " out of range");
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            result(i, j) = (*this)(i, static_cast<std::size_t>(idx));
        }
    }
    return result;
}

Matrix Matrix::leading_columns(std::size_t count) const {
    if (count == 0 || count > cols_) {
        throw ContractError("leading_columns: count out of range");
    }
    Matrix result(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            result(i, j) = (*this)(i, j);
        }
    }
    return result;
}

std::vector<double> Matrix::diagonal_vector() const {
    const std::size_t n = rows_ < cols_ ? rows_ : cols_;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = (*this)(i, i);
    }
    return d;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : data_) {
        const double a = std::fabs(v);
        if (a > best) {
            best = a;
        }
    }
    return best;
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(double factor) {
    for (double& v : data_) {
        v *= factor;
    }
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) {
    lhs += rhs;
    return lhs;
}

Matrix operator-(Matrix lhs, const Matrix& rhs) {
    lhs -= rhs;
    return lhs;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw ContractError("operator*: inner dimensions differ (" +
                            std::to_string(lhs.cols()) + " vs " +
                            std::to_string(rhs.rows()) + ")");
    }
    Matrix result(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                result(i, j) += a * rhs(k, j);
            }
        }
    }
    return result;
}

Matrix operator*(double factor, Matrix m) {
    m *= factor;
    return m;
}

Matrix operator-(Matrix m) {
    m *= -1.0;
    return m;
}

Matrix scale_columns(const Matrix& m, std::span<const double> factors) {
    if (factors.size() != m.cols()) {
        throw ContractError("scale_columns: factor count differs from column count");
    }
    Matrix result(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            result(i, j) = m(i, j) * factors[j];
        }
    }
    return result;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = std::fabs(a(i, j) - b(i, j));
            if (d > best) {
                best = d;
            }
        }
    }
    return best;
}

} // namespace sympca
