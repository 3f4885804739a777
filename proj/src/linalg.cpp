#include "sympca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sympca/errors.hpp"

namespace sympca {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiOffTarget = 1e-13;   // times ||M||_F
constexpr double kSymmetryTolerance = 1e-10; // relative

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            sum += 2.0 * a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

// Orthonormal columns from a Householder QR, with the R diagonal forced
// positive so Gaussian input yields the Haar distribution.
Matrix qr_orthonormal(Matrix a) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();

    std::vector<std::vector<double>> reflectors;
    reflectors.reserve(m);
    std::vector<double> r_diag(m, 0.0);

    for (std::size_t k = 0; k < m; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            norm += a(i, k) * a(i, k);
        }
        norm = std::sqrt(norm);

        std::vector<double> v(n - k, 0.0);
        if (norm == 0.0) {
            // Degenerate column; leave an identity reflector.
            reflectors.push_back(std::move(v));
            r_diag[k] = 0.0;
            continue;
        }

        const double alpha = a(k, k) >= 0.0 ? -norm : norm;
        for (std::size_t i = k; i < n; ++i) {
            v[i - k] = a(i, k);
        }
        v[0] -= alpha;
        double vnorm = 0.0;
        for (double x : v) {
            vnorm += x * x;
        }
        vnorm = std::sqrt(vnorm);
        if (vnorm > 0.0) {
            for (double& x : v) {
                x /= vnorm;
            }
        }

        // Apply I - 2 v v^T to the trailing columns.
        for (std::size_t j = k; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) {
                dot += v[i - k] * a(i, j);
            }
            for (std::size_t i = k; i < n; ++i) {
                a(i, j) -= 2.0 * dot * v[i - k];
            }
        }
        r_diag[k] = a(k, k);
        reflectors.push_back(std::move(v));
    }

    // Accumulate Q = H_0 ... H_{m-1} applied to the first m columns of I.
    Matrix q(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        q(j, j) = 1.0;
    }
    for (std::size_t k = m; k-- > 0;) {
        const std::vector<double>& v = reflectors[k];
        double vnorm = 0.0;
        for (double x : v) {
            vnorm += x * x;
        }
        if (vnorm == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) {
                dot += v[i - k] * q(i, j);
            }
            for (std::size_t i = k; i < n; ++i) {
                q(i, j) -= 2.0 * dot * v[i - k];
            }
        }
    }

    for (std::size_t j = 0; j < m; ++j) {
        if (r_diag[j] < 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                q(i, j) = -q(i, j);
            }
        }
    }
    return q;
}

} // namespace

EigenDecomposition sym_eigen(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ContractError("sym_eigen: matrix must be square");
    }
    if (!(tol > 0.0)) {
        throw ContractError("sym_eigen: tol must be positive");
    }
    const std::size_t n = m.rows();
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(m(i, j) - m(j, i)) > kSymmetryTolerance * std::max(1.0, scale)) {
                throw ContractError("sym_eigen: input is not symmetric");
            }
        }
    }

    // Work on the symmetrized copy; asymmetry is within tolerance by now.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (m(i, j) + m(j, i));
        }
    }
    Matrix v = Matrix::identity(n);

    const double fro = a.frobenius_norm();
    const double target = kJacobiOffTarget * fro;
    double off = off_diagonal_norm(a);

    for (int sweep = 0; sweep < kMaxJacobiSweeps && off > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double shrink = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) {
                        continue;
                    }
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = aip - s * (aiq + shrink * aip);
                    a(p, i) = a(i, p);
                    a(i, q) = aiq + s * (aip - shrink * aiq);
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = vip - s * (viq + shrink * vip);
                    v(i, q) = viq + s * (vip - shrink * viq);
                }
            }
        }
        off = off_diagonal_norm(a);
    }

    if (off > tol * fro) {
        throw ConvergenceError("sym_eigen: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t l, std::size_t r) { return a(l, l) > a(r, r); });

    EigenDecomposition result;
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) {
            result.vectors(i, j) = v(i, order[j]);
        }
    }
    return result;
}

Matrix sym_inv_sqrt(const Matrix& m) {
    const EigenDecomposition eig = sym_eigen(m);
    const double smallest = eig.values.back();
    if (smallest <= 1e-12) {
        throw SingularError("sym_inv_sqrt: smallest eigenvalue " +
                            std::to_string(smallest) + " is not safely positive");
    }
    const std::size_t n = m.rows();
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        inv_sqrt[i] = 1.0 / std::sqrt(eig.values[i]);
    }
    const Matrix r = scale_columns(eig.vectors, inv_sqrt) * eig.vectors.transposed();
    // Symmetrize away the rounding skew.
    Matrix result(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            result(i, j) = 0.5 * (r(i, j) + r(j, i));
        }
    }
    return result;
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
    if (n < 1) {
        throw ContractError("random_orthogonal: n must be at least 1");
    }
    return qr_orthonormal(random_gaussian(n, n, rng));
}

Matrix random_stiefel(std::size_t n, std::size_t m, Rng& rng) {
    if (m < 1 || m > n) {
        throw ContractError("random_stiefel: need 1 <= m <= n");
    }
    return qr_orthonormal(random_gaussian(n, m, rng));
}

double determinant(Matrix a) {
    if (a.rows() != a.cols()) {
        throw ContractError("determinant: matrix must be square");
    }
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::fabs(a(i, k));
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
            }
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
        }
    }
    return det;
}

} // namespace sympca
