#pragma once

#include <cstdint>
#include <vector>

#include "sympca/matrix.hpp"
#include "sympca/model.hpp"
#include "sympca/rules.hpp"

namespace sympca {

enum class BackProjection { Exact, Approximated, None };

struct SimConfig {
    CovarianceModel model;
    RuleSpec spec;
    std::size_t m = 4;
    double gamma = 1.0; // learning rate, reciprocal of the rule time constant
    long steps = 20000;
    long subsample = 100;
    BackProjection backprojection = BackProjection::Exact;
    std::uint64_t seed = 1;
};

struct TraceRow {
    long step = 0;
    double e_o = 0.0;
    double e_p = 0.0;
};

struct SimResult {
    std::vector<TraceRow> trace;
    Matrix final_estimate;
};

// W' (W'^T W')^{-1/2}; lands on the Stiefel manifold, preserves the span.
// A singular Gram matrix raises DivergenceError.
Matrix exact_backprojection(const Matrix& w_prime);

// W' - 1/2 W_t Wdot_t^T Wdot_t, where Wdot_t is the gamma-scaled step that was
// added to W_t. Agrees with the exact projection to second order in the step.
Matrix approx_backprojection(const Matrix& w_prime, const Matrix& w_t, const Matrix& w_dot_t);

// One Euler step W' = W + gamma * rhs followed by the configured
// back-projection. Non-finite results raise DivergenceError with the step.
Matrix euler_step(const Matrix& w_t, const SimConfig& config, long step_index = 0);

// Integrates from a seeded random Stiefel start, recording errors at step 0,
// every `subsample` steps, and the final step. Deterministic given the config.
SimResult run_simulation(const SimConfig& config);

} // namespace sympca
