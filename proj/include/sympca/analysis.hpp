#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sympca/matrix.hpp"
#include "sympca/model.hpp"
#include "sympca/rng.hpp"

namespace sympca {

// Blocks of M = Q^T Lambda Q for an orthogonal completion Q = [A | A_perp] of
// the eigenvector projection A = V^T W of a semi-orthogonal W.
struct ConstraintBlocks {
    Matrix s; // m x m, equals W^T C W
    Matrix t; // (n-m) x m, zero at every eigenvector-selection fixed point
    Matrix u; // (n-m) x (n-m)
};

struct ConstraintResiduals {
    double sd = 0.0; // ||S Dbar - Dbar S||_F with Dbar = dg{S}
    double t = 0.0;  // ||T ((1+alpha) Dbar - alpha S)||_F
};

ConstraintBlocks constraint_blocks(const Matrix& w_bar, const CovarianceModel& model);

ConstraintResiduals check_fixed_point_constraints(const ConstraintBlocks& blocks, double alpha);

struct SweepResult {
    std::vector<double> alphas;
    std::vector<double> dets;
    std::vector<std::pair<double, double>> zero_crossings; // bracketing grid pairs
};

// det{(1+alpha) dg{A^T Lambda A} - alpha A^T Lambda A} over the alpha grid.
// A singular factor admits fixed points with nonzero T, so sign changes flag
// candidate extra fixed points.
SweepResult det_sweep(const Matrix& a_bar, std::span<const double> lambdas,
                      std::span<const double> alpha_grid);

// Perturbation of an eigenvector-selection fixed point, parametrized by a
// skew-symmetric in-subspace direction and an out-of-subspace direction, both
// unit Frobenius norm (or zero) and scaled by epsilon.
struct StabilityProbe {
    std::vector<int> selection;
    Matrix step_a; // m x m, skew-symmetric
    Matrix step_b; // (n-m) x m
    double epsilon = 1e-3;
    double alpha = 0.0;
};

// W = Vsel (I + A - (A^T A + B^T B)/2) + Vperp B with A, B the epsilon-scaled
// probe directions, followed by exact back-projection onto the manifold.
Matrix perturbed_point(const CovarianceModel& model, const StabilityProbe& probe);

// J_mod(W) - J_mod(Wbar) for the modified objective at the probe's alpha.
double delta_j_measured(const Matrix& w, const Matrix& w_bar, const Matrix& c, double alpha);

// Closed-form second-order prediction for the distinct-eigenvalue case:
//   (1+alpha)/2 sum_j [lh_j (A^T Lh A)_jj - lh_j^2 (A^T A)_jj]
//       + 1/2  sum_j [lh_j (B^T Lc B)_jj - lh_j^2 (B^T B)_jj]
// with A = epsilon * step_a and B = epsilon * step_b.
double delta_j_predicted_special(std::span<const double> lambdas_hat,
                                 std::span<const double> lambdas_check,
                                 const Matrix& step_a, const Matrix& step_b,
                                 double epsilon, double alpha);

// Second-order change of the off-diagonal penalty term, valid for general H:
// ( tr{H^2 B^T B} - tr{H B^T Lc B} ) / 2. Depends only on the B direction.
double delta_j2_general(const Matrix& h, std::span<const double> lambdas_check,
                        const Matrix& step_b, double epsilon);

// Probe direction helpers (unit Frobenius norm).
Matrix random_skew_unit(std::size_t m, Rng& rng);
Matrix random_unit(std::size_t rows, std::size_t cols, Rng& rng);

std::vector<int> complement_indices(std::size_t n, std::span<const int> selection);

} // namespace sympca
