#include "sympca/metrics.hpp"

#include <cmath>

#include "sympca/errors.hpp"

namespace sympca {

namespace {

void require_square(const Matrix& x, const char* op) {
    if (x.rows() != x.cols()) {
        throw ContractError(std::string(op) + ": matrix must be square");
    }
}

} // namespace

double e1(const Matrix& x) {
    require_square(x, "e1");
    const std::size_t m = x.rows();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            sum += std::fabs(x(i, j) - (i == j ? 1.0 : 0.0));
        }
    }
    return sum / static_cast<double>(m * m);
}

double e2(const Matrix& x) {
    require_square(x, "e2");
    const std::size_t m = x.rows();
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double col_max = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            col_max = std::max(col_max, std::fabs(x(i, j)));
        }
        sum += std::fabs(col_max - 1.0);
    }
    return sum / static_cast<double>(m);
}

double e2_prime(const Matrix& x) {
    require_square(x, "e2_prime");
    return 0.5 * (e2(x) + e2(x.transposed()));
}

double orthonormality_error(const Matrix& w) {
    return e1(w.transposed() * w);
}

double projection_error(const Matrix& w, const Matrix& v_hat) {
    if (w.rows() != v_hat.rows() || w.cols() != v_hat.cols()) {
        throw ContractError("projection_error: estimate and reference shapes differ");
    }
    return e2_prime(v_hat.transposed() * w);
}

std::vector<double> eigenvalue_estimates(const Matrix& w, const Matrix& c) {
    if (c.rows() != c.cols() || w.rows() != c.rows()) {
        throw ContractError("eigenvalue_estimates: shape mismatch");
    }
    const Matrix cw = c * w;
    std::vector<double> estimates(w.cols());
    for (std::size_t j = 0; j < w.cols(); ++j) {
        double quad = 0.0;
        for (std::size_t i = 0; i < w.rows(); ++i) {
            quad += w(i, j) * cw(i, j);
        }
        estimates[j] = quad;
    }
    return estimates;
}

ErrorReport error_report(const Matrix& w, const Matrix& v_hat) {
    return ErrorReport{orthonormality_error(w), projection_error(w, v_hat)};
}

} // namespace sympca
