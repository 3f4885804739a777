#include <doctest.h>

#include <cmath>
#include <cstring>

#include "sympca/errors.hpp"
#include "sympca/linalg.hpp"
#include "sympca/matrix.hpp"
#include "sympca/rng.hpp"

using namespace sympca;

namespace {

Matrix random_symmetric(std::size_t n, Rng& rng) {
    Matrix a = random_gaussian(n, n, rng);
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = 0.5 * (a(i, j) + a(j, i));
        }
    }
    return s;
}

Matrix random_spd(std::size_t n, Rng& rng) {
    Matrix q = random_orthogonal(n, rng);
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigs[i] = 0.5 + rng.uniform() * 4.0;
    }
    const Matrix raw = scale_columns(q, eigs) * q.transposed();
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = 0.5 * (raw(i, j) + raw(j, i));
        }
    }
    return s;
}

} // namespace

TEST_CASE("matrix arithmetic basics") {
    Matrix a(2, 3);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(0, 2) = 3;
    a(1, 0) = 4;
    a(1, 1) = 5;
    a(1, 2) = 6;
    const Matrix at = a.transposed();
    CHECK(at.rows() == 3);
    CHECK(at(2, 1) == 6);

    const Matrix prod = a * at; // 2x2
    CHECK(prod(0, 0) == doctest::Approx(14.0));
    CHECK(prod(0, 1) == doctest::Approx(32.0));
    CHECK(prod(1, 1) == doctest::Approx(77.0));

    CHECK_THROWS_AS(a * a, ContractError);
    CHECK_THROWS_AS(a + at, ContractError);
    CHECK_THROWS_AS(Matrix(0, 3), ContractError);
}

TEST_CASE("scale_columns matches explicit diagonal product") {
    Rng rng(1);
    const Matrix a = random_gaussian(5, 3, rng);
    const std::vector<double> f = {2.0, -1.0, 0.5};
    const Matrix scaled = scale_columns(a, f);
    const Matrix expected = a * Matrix::diagonal(f);
    CHECK(max_abs_diff(scaled, expected) == 0.0);
}

TEST_CASE("sym_eigen on a diagonal matrix sorts descending") {
    std::vector<double> d = {3.0, 1.0, 2.0};
    const EigenDecomposition eig = sym_eigen(Matrix::diagonal(d));
    CHECK(eig.values[0] == doctest::Approx(3.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));
    CHECK(eig.values[2] == doctest::Approx(1.0));
    // Eigenvectors are a column-permuted identity.
    for (std::size_t j = 0; j < 3; ++j) {
        double col_max = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            col_max = std::max(col_max, std::fabs(eig.vectors(i, j)));
        }
        CHECK(col_max == doctest::Approx(1.0));
    }
}

TEST_CASE("sym_eigen on the identity") {
    const EigenDecomposition eig = sym_eigen(Matrix::identity(4));
    for (double v : eig.values) {
        CHECK(v == doctest::Approx(1.0));
    }
}

TEST_CASE("sym_eigen reconstruction oracle on random symmetric matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 18.0);
        const Matrix m = random_symmetric(n, rng);
        const EigenDecomposition eig = sym_eigen(m);

        const Matrix rebuilt = scale_columns(eig.vectors, eig.values) * eig.vectors.transposed();
        CHECK((rebuilt - m).frobenius_norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));

        const Matrix gram = eig.vectors.transposed() * eig.vectors;
        CHECK(max_abs_diff(gram, Matrix::identity(n)) <= 1e-10);

        for (std::size_t i = 1; i < n; ++i) {
            CHECK(eig.values[i - 1] >= eig.values[i]);
        }
    }
}

TEST_CASE("sym_eigen rejects asymmetric input") {
    Matrix m = Matrix::identity(3);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(sym_eigen(m), ContractError);
}

TEST_CASE("sym_inv_sqrt identity cases") {
    const Matrix r1 = sym_inv_sqrt(Matrix::identity(4));
    CHECK(max_abs_diff(r1, Matrix::identity(4)) <= 1e-12);

    const Matrix r2 = sym_inv_sqrt(4.0 * Matrix::identity(2));
    CHECK(max_abs_diff(r2, 0.5 * Matrix::identity(2)) <= 1e-12);
}

TEST_CASE("sym_inv_sqrt defining identity on random SPD matrices") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5.0);
        const Matrix m = random_spd(n, rng);
        const Matrix r = sym_inv_sqrt(m);
        CHECK(max_abs_diff(r, r.transposed()) == 0.0);
        CHECK(max_abs_diff(r * m * r, Matrix::identity(n)) <= 1e-9);
    }
}

TEST_CASE("sym_inv_sqrt rejects near-singular input") {
    std::vector<double> d = {1.0, 1e-13};
    CHECK_THROWS_AS(sym_inv_sqrt(Matrix::diagonal(d)), SingularError);
}

TEST_CASE("random_orthogonal is orthogonal to tight tolerance") {
    Rng rng(3);
    const Matrix q1 = random_orthogonal(1, rng);
    CHECK(std::fabs(std::fabs(q1(0, 0)) - 1.0) <= 1e-12);

    const Matrix q = random_orthogonal(10, rng);
    CHECK(max_abs_diff(q.transposed() * q, Matrix::identity(10)) <= 1e-12);
    CHECK(max_abs_diff(q * q.transposed(), Matrix::identity(10)) <= 1e-12);
}

TEST_CASE("random_stiefel has orthonormal columns") {
    Rng rng(4);
    const Matrix w = random_stiefel(10, 4, rng);
    CHECK(max_abs_diff(w.transposed() * w, Matrix::identity(4)) <= 1e-12);

    const Matrix square = random_stiefel(3, 3, rng);
    CHECK(max_abs_diff(square.transposed() * square, Matrix::identity(3)) <= 1e-12);

    const Matrix column = random_stiefel(6, 1, rng);
    double norm = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        norm += column(i, 0) * column(i, 0);
    }
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(random_stiefel(3, 4, rng), ContractError);
}

TEST_CASE("seeded draws are bitwise reproducible") {
    Rng a(123456);
    Rng b(123456);
    const Matrix qa = random_orthogonal(8, a);
    const Matrix qb = random_orthogonal(8, b);
    CHECK(std::memcmp(qa.data(), qb.data(), sizeof(double) * 64) == 0);

    Rng c(123457);
    const Matrix qc = random_orthogonal(8, c);
    CHECK(max_abs_diff(qa, qc) > 1e-3);
}

TEST_CASE("rng streams under one seed do not collide") {
    Rng a(42, 0);
    Rng b(42, 1);
    bool identical = true;
    for (int i = 0; i < 16; ++i) {
        identical = identical && (a.next_u64() == b.next_u64());
    }
    CHECK_FALSE(identical);
}

TEST_CASE("determinant via LU matches hand values") {
    Matrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    CHECK(determinant(m) == doctest::Approx(-2.0));
    CHECK(determinant(Matrix::identity(5)) == doctest::Approx(1.0));

    Matrix singular(2, 2);
    singular(0, 0) = 1;
    singular(0, 1) = 2;
    singular(1, 0) = 2;
    singular(1, 1) = 4;
    CHECK(determinant(singular) == doctest::Approx(0.0));

    // Product rule spot check against the eigenvalue product.
    std::vector<double> d = {2.0, 3.0, 0.5};
    Rng rng(5);
    const Matrix q = random_orthogonal(3, rng);
    const Matrix a = scale_columns(q, d) * q.transposed();
    CHECK(determinant(a) == doctest::Approx(3.0).epsilon(1e-10));
}
