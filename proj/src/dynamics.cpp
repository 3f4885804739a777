#include "sympca/dynamics.hpp"

#include "sympca/errors.hpp"
#include "sympca/linalg.hpp"
#include "sympca/metrics.hpp"
#include "sympca/rng.hpp"

namespace sympca {

namespace {

void require_valid(const SimConfig& config) {
    if (!(config.gamma > 0.0)) {
        throw ContractError("simulation: gamma must be positive");
    }
    if (config.subsample < 1) {
        throw ContractError("simulation: subsample must be at least 1");
    }
    if (config.steps < 0) {
        throw ContractError("simulation: steps must be nonnegative");
    }
    if (config.m < 1 || config.m > config.model.n) {
        throw ContractError("simulation: need 1 <= m <= n");
    }
}

} // namespace

Matrix exact_backprojection(const Matrix& w_prime) {
    const Matrix gram = w_prime.transposed() * w_prime;
    try {
        return w_prime * sym_inv_sqrt(gram);
    } catch (const SingularError& e) {
        throw DivergenceError(std::string("back-projection failed, ") + e.what());
    }
}

Matrix approx_backprojection(const Matrix& w_prime, const Matrix& w_t, const Matrix& w_dot_t) {
    if (w_prime.rows() != w_t.rows() || w_prime.cols() != w_t.cols() ||
        w_dot_t.rows() != w_t.rows() || w_dot_t.cols() != w_t.cols()) {
        throw ContractError("approx_backprojection: shape mismatch");
    }
    return w_prime - 0.5 * (w_t * (w_dot_t.transposed() * w_dot_t));
}

Matrix euler_step(const Matrix& w_t, const SimConfig& config, long step_index) {
    if (!w_t.all_finite()) {
        throw DivergenceError("estimate has non-finite entries", step_index);
    }
    const Matrix step = config.gamma * rule_rhs(config.spec, w_t, config.model.covariance);
    const Matrix w_prime = w_t + step;

    Matrix next = w_prime;
    switch (config.backprojection) {
    case BackProjection::Exact:
        try {
            next = exact_backprojection(w_prime);
        } catch (const DivergenceError& e) {
            throw DivergenceError(e.what(), step_index);
        }
        break;
    case BackProjection::Approximated:
        next = approx_backprojection(w_prime, w_t, step);
        break;
    case BackProjection::None:
        break;
    }

    if (!next.all_finite()) {
        throw DivergenceError("estimate has non-finite entries", step_index);
    }
    return next;
}

SimResult run_simulation(const SimConfig& config) {
    require_valid(config);

    // Stream 1 keeps the initial estimate independent of the draws that built
    // the covariance model under the same seed.
    Rng rng(config.seed, 1);
    Matrix w = random_stiefel(config.model.n, config.m, rng);
    const Matrix v_hat = config.model.principal_eigenvectors(config.m);

    SimResult result;
    const ErrorReport initial = error_report(w, v_hat);
    result.trace.push_back(TraceRow{0, initial.e_o, initial.e_p});

    for (long step = 1; step <= config.steps; ++step) {
        w = euler_step(w, config, step);
        if (step % config.subsample == 0 || step == config.steps) {
            const ErrorReport report = error_report(w, v_hat);
            result.trace.push_back(TraceRow{step, report.e_o, report.e_p});
        }
    }
    result.final_estimate = std::move(w);
    return result;
}

} // namespace sympca
