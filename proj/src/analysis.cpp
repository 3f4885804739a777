#include "sympca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympca/errors.hpp"
#include "sympca/dynamics.hpp"
#include "sympca/linalg.hpp"
#include "sympca/rules.hpp"

namespace sympca {

namespace {

// Extends the orthonormal columns of `basis` to a full orthogonal matrix by
// Gram-Schmidt over canonical basis vectors, pivoting on the largest residual.
Matrix complete_orthonormal(const Matrix& basis) {
    const std::size_t n = basis.rows();
    const std::size_t m = basis.cols();
    Matrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            q(i, j) = basis(i, j);
        }
    }

    std::vector<bool> used(n, false);
    for (std::size_t col = m; col < n; ++col) {
        // Residual norm of canonical e_i against the filled columns is
        // 1 - sum_j q(i,j)^2; pick the largest.
        std::size_t best = n;
        double best_residual = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) {
                continue;
            }
            double projected = 0.0;
            for (std::size_t j = 0; j < col; ++j) {
                projected += q(i, j) * q(i, j);
            }
            const double residual = 1.0 - projected;
            if (residual > best_residual) {
                best_residual = residual;
                best = i;
            }
        }
        used[best] = true;

        std::vector<double> v(n, 0.0);
        v[best] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < col; ++j) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    dot += q(i, j) * v[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= dot * q(i, j);
                }
            }
        }
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            throw ConvergenceError("orthogonal completion lost rank");
        }
        for (std::size_t i = 0; i < n; ++i) {
            q(i, col) = v[i] / norm;
        }
    }
    return q;
}

Matrix lambda_weighted_product(const Matrix& left, std::span<const double> lambdas,
                               const Matrix& right) {
    // left^T * diag(lambdas) * right without forming the diagonal.
    Matrix result(left.cols(), right.cols());
    for (std::size_t i = 0; i < left.cols(); ++i) {
        for (std::size_t j = 0; j < right.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < left.rows(); ++k) {
                sum += left(k, i) * lambdas[k] * right(k, j);
            }
            result(i, j) = sum;
        }
    }
    return result;
}

void require_probe(const StabilityProbe& probe, std::size_t n) {
    const std::size_t m = probe.selection.size();
    if (m == 0 || m >= n) {
        throw ContractError("stability probe: need 1 <= m < n");
    }
    if (probe.step_a.rows() != m || probe.step_a.cols() != m) {
        throw ContractError("stability probe: step_a must be m x m");
    }
    if (probe.step_b.rows() != n - m || probe.step_b.cols() != m) {
        throw ContractError("stability probe: step_b must be (n-m) x m");
    }
    if (!(probe.epsilon > 0.0) || probe.epsilon > 1e-2) {
        throw ContractError("stability probe: epsilon must lie in (0, 1e-2]");
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (probe.step_a(i, j) + probe.step_a(j, i) != 0.0) {
                throw ContractError("stability probe: step_a is not skew-symmetric");
            }
        }
    }
    const double a_norm = probe.step_a.frobenius_norm();
    const double b_norm = probe.step_b.frobenius_norm();
    if (a_norm != 0.0 && std::fabs(a_norm - 1.0) > 1e-12) {
        throw ContractError("stability probe: step_a must be zero or unit norm");
    }
    if (b_norm != 0.0 && std::fabs(b_norm - 1.0) > 1e-12) {
        throw ContractError("stability probe: step_b must be zero or unit norm");
    }
}

} // namespace

ConstraintBlocks constraint_blocks(const Matrix& w_bar, const CovarianceModel& model) {
    if (w_bar.rows() != model.n || w_bar.cols() > model.n) {
        throw ContractError("constraint_blocks: estimate shape mismatch");
    }
    const std::size_t m = w_bar.cols();
    const Matrix gram = w_bar.transposed() * w_bar;
    if (max_abs_diff(gram, Matrix::identity(m)) > 1e-10) {
        throw ContractError("constraint_blocks: estimate is off the Stiefel manifold");
    }

    const Matrix a_bar = model.eigenvectors.transposed() * w_bar;
    const Matrix q = complete_orthonormal(a_bar);

    std::vector<int> tail(model.n - m);
    for (std::size_t k = 0; k < tail.size(); ++k) {
        tail[k] = static_cast<int>(m + k);
    }
    const Matrix q_perp = q.columns(tail);

    ConstraintBlocks blocks;
    blocks.s = lambda_weighted_product(a_bar, model.lambdas, a_bar);
    blocks.t = lambda_weighted_product(q_perp, model.lambdas, a_bar);
    blocks.u = lambda_weighted_product(q_perp, model.lambdas, q_perp);
    return blocks;
}

ConstraintResiduals check_fixed_point_constraints(const ConstraintBlocks& blocks, double alpha) {
    const std::size_t m = blocks.s.rows();
    const std::vector<double> d_bar = blocks.s.diagonal_vector();

    Matrix commutator(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            // (S Dbar - Dbar S)_ij = S_ij (d_j - d_i)
            commutator(i, j) = blocks.s(i, j) * (d_bar[j] - d_bar[i]);
        }
    }

    Matrix factor = -alpha * blocks.s;
    for (std::size_t j = 0; j < m; ++j) {
        factor(j, j) += (1.0 + alpha) * d_bar[j];
    }

    ConstraintResiduals residuals;
    residuals.sd = commutator.frobenius_norm();
    residuals.t = (blocks.t * factor).frobenius_norm();
    return residuals;
}

SweepResult det_sweep(const Matrix& a_bar, std::span<const double> lambdas,
                      std::span<const double> alpha_grid) {
    if (a_bar.rows() != lambdas.size()) {
        throw ContractError("det_sweep: lambda count differs from row count");
    }
    for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > alpha_grid[i - 1])) {
            throw ContractError("det_sweep: alpha grid must be strictly increasing");
        }
    }

    const Matrix s = lambda_weighted_product(a_bar, lambdas, a_bar);
    const std::vector<double> diag = s.diagonal_vector();
    const std::size_t m = s.rows();

    SweepResult result;
    result.alphas.assign(alpha_grid.begin(), alpha_grid.end());
    result.dets.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        Matrix d_prime = -alpha * s;
        for (std::size_t j = 0; j < m; ++j) {
            d_prime(j, j) = (1.0 + alpha) * diag[j] - alpha * s(j, j);
        }
        result.dets.push_back(determinant(d_prime));
    }
    for (std::size_t i = 1; i < result.dets.size(); ++i) {
        if (result.dets[i - 1] * result.dets[i] < 0.0) {
            result.zero_crossings.emplace_back(result.alphas[i - 1], result.alphas[i]);
        }
    }
    return result;
}

Matrix perturbed_point(const CovarianceModel& model, const StabilityProbe& probe) {
    require_probe(probe, model.n);
    const std::size_t m = probe.selection.size();

    const Matrix v_sel = model.eigenvectors.columns(probe.selection);
    const std::vector<int> rest = complement_indices(model.n, probe.selection);
    const Matrix v_perp = model.eigenvectors.columns(rest);

    const Matrix a = probe.epsilon * probe.step_a;
    const Matrix b = probe.epsilon * probe.step_b;

    Matrix f = Matrix::identity(m) + a -
               0.5 * (a.transposed() * a + b.transposed() * b);
    return exact_backprojection(v_sel * f + v_perp * b);
}

double delta_j_measured(const Matrix& w, const Matrix& w_bar, const Matrix& c, double alpha) {
    return objective_modified(w, c, alpha) - objective_modified(w_bar, c, alpha);
}

double delta_j_predicted_special(std::span<const double> lambdas_hat,
                                 std::span<const double> lambdas_check,
                                 const Matrix& step_a, const Matrix& step_b,
                                 double epsilon, double alpha) {
    const std::size_t m = lambdas_hat.size();
    if (step_a.rows() != m || step_a.cols() != m) {
        throw ContractError("delta_j_predicted_special: step_a must be m x m");
    }
    if (step_b.cols() != m || step_b.rows() != lambdas_check.size()) {
        throw ContractError("delta_j_predicted_special: step_b shape mismatch");
    }

    const Matrix a = epsilon * step_a;
    const Matrix b = epsilon * step_b;

    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double a_weighted = 0.0; // (A^T Lh A)_jj
        double a_plain = 0.0;    // (A^T A)_jj
        for (std::size_t i = 0; i < m; ++i) {
            a_weighted += a(i, j) * lambdas_hat[i] * a(i, j);
            a_plain += a(i, j) * a(i, j);
        }
        double b_weighted = 0.0; // (B^T Lc B)_jj
        double b_plain = 0.0;    // (B^T B)_jj
        for (std::size_t i = 0; i < lambdas_check.size(); ++i) {
            b_weighted += b(i, j) * lambdas_check[i] * b(i, j);
            b_plain += b(i, j) * b(i, j);
        }
        sum_a += lambdas_hat[j] * a_weighted - lambdas_hat[j] * lambdas_hat[j] * a_plain;
        sum_b += lambdas_hat[j] * b_weighted - lambdas_hat[j] * lambdas_hat[j] * b_plain;
    }
    return 0.5 * (1.0 + alpha) * sum_a + 0.5 * sum_b;
}

double delta_j2_general(const Matrix& h, std::span<const double> lambdas_check,
                        const Matrix& step_b, double epsilon) {
    const std::size_t m = h.rows();
    if (h.cols() != m) {
        throw ContractError("delta_j2_general: H must be square");
    }
    if (max_abs_diff(h, h.transposed()) > 1e-10 * std::max(1.0, h.max_abs())) {
        throw ContractError("delta_j2_general: H must be symmetric");
    }
    if (step_b.cols() != m || step_b.rows() != lambdas_check.size()) {
        throw ContractError("delta_j2_general: step_b shape mismatch");
    }

    const Matrix b = epsilon * step_b;
    const Matrix btb = b.transposed() * b;
    const Matrix h2 = h * h;
    double tr_h2_btb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            tr_h2_btb += h2(i, k) * btb(k, i);
        }
    }
    const Matrix bt_lc_b = lambda_weighted_product(b, lambdas_check, b);
    double tr_h_btlb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            tr_h_btlb += h(i, k) * bt_lc_b(k, i);
        }
    }
    return 0.5 * (tr_h2_btb - tr_h_btlb);
}

Matrix random_skew_unit(std::size_t m, Rng& rng) {
    if (m < 2) {
        throw ContractError("random_skew_unit: need m >= 2");
    }
    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double x = rng.normal();
            a(i, j) = x;
            a(j, i) = -x;
        }
    }
    const double norm = a.frobenius_norm();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a(i, j) /= norm;
        }
    }
    // Re-impose exact skewness after the division.
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) = 0.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            a(j, i) = -a(i, j);
        }
    }
    return a;
}

Matrix random_unit(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix b = random_gaussian(rows, cols, rng);
    const double norm = b.frobenius_norm();
    b *= 1.0 / norm;
    return b;
}

std::vector<int> complement_indices(std::size_t n, std::span<const int> selection) {
    std::vector<bool> selected(n, false);
    for (int idx : selection) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
            throw ContractError("complement_indices: index out of range");
        }
        selected[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<int> rest;
    rest.reserve(n - selection.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!selected[i]) {
            rest.push_back(static_cast<int>(i));
        }
    }
    return rest;
}

} // namespace sympca
