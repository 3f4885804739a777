#pragma once

#include <cstddef>
#include <vector>

#include "sympca/matrix.hpp"
#include "sympca/rng.hpp"

namespace sympca {

struct EigenDecomposition {
    std::vector<double> values; // descending
    Matrix vectors;             // orthogonal, column i pairs with values[i]
};

// Symmetric eigendecomposition by cyclic Jacobi rotations. Input must be
// symmetric within 1e-10 relative; throws ContractError otherwise and
// ConvergenceError if the sweep cap is hit above `tol`.
EigenDecomposition sym_eigen(const Matrix& m, double tol = 1e-10);

// Inverse square root of a symmetric positive-definite matrix: the symmetric R
// with R*M*R = I. Throws SingularError when the smallest eigenvalue is <= 1e-12.
Matrix sym_inv_sqrt(const Matrix& m);

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the R
// diagonal sign-corrected to be positive.
Matrix random_orthogonal(std::size_t n, Rng& rng);

// Uniform n x m semi-orthogonal matrix (W^T W = I_m), same construction.
Matrix random_stiefel(std::size_t n, std::size_t m, Rng& rng);

// Determinant by LU factorization with partial pivoting.
double determinant(Matrix a);

} // namespace sympca
