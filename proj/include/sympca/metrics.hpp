#pragma once

#include <vector>

#include "sympca/matrix.hpp"

namespace sympca {

struct ErrorReport {
    double e_o = 0.0; // orthonormality error e1(W^T W)
    double e_p = 0.0; // projection error e2'(Vhat^T W)
};

// e1(X) = (1/m^2) sum_ij |X_ij - delta_ij|; zero iff X is the identity.
double e1(const Matrix& x);

// e2(X) = (1/m) sum_j |max_i |X_ij| - 1|; zero iff every column's largest
// absolute entry equals one.
double e2(const Matrix& x);

// e2'(X) = (e2(X) + e2(X^T)) / 2; checks columns and rows, so many-to-one
// column assignments are penalized.
double e2_prime(const Matrix& x);

double orthonormality_error(const Matrix& w);

// e_p(W, Vhat) = e2'(Vhat^T W); zero iff each estimate matches a distinct true
// eigenvector up to sign.
double projection_error(const Matrix& w, const Matrix& v_hat);

// Diagonal of W^T C W in column order.
std::vector<double> eigenvalue_estimates(const Matrix& w, const Matrix& c);

ErrorReport error_report(const Matrix& w, const Matrix& v_hat);

} // namespace sympca
