#include "sympca/rules.hpp"

#include <cmath>
#include <cstdio>

#include "sympca/errors.hpp"

namespace sympca {

namespace {

void require_dimensions(const Matrix& w, const Matrix& c) {
    if (c.rows() != c.cols()) {
        throw ContractError("covariance matrix must be square");
    }
    if (w.rows() != c.rows()) {
        throw ContractError("estimate matrix row count differs from covariance size");
    }
    if (w.cols() > w.rows()) {
        throw ContractError("estimate matrix cannot have more columns than rows");
    }
}

// Asymmetry is a modelling bug upstream; it is never patched over here.
void require_symmetric(const Matrix& c) {
    const double scale = std::max(1.0, c.max_abs());
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = i + 1; j < c.cols(); ++j) {
            if (std::fabs(c(i, j) - c(j, i)) > 1e-10 * scale) {
                throw ContractError("covariance matrix is not symmetric");
            }
        }
    }
}

std::vector<double> default_theta(std::size_t m) {
    std::vector<double> theta(m);
    for (std::size_t j = 0; j < m; ++j) {
        theta[j] = static_cast<double>(j + 1) / static_cast<double>(m);
    }
    return theta;
}

std::vector<double> diagonal_of_product(const Matrix& a, const Matrix& b) {
    std::vector<double> d(a.rows());
    for (std::size_t j = 0; j < a.rows(); ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            sum += a(j, k) * b(k, j);
        }
        d[j] = sum;
    }
    return d;
}

// Common shape of TwJ2S/N2S/M2S: C W F - W F W^T C W for a factor matrix F.
Matrix factored_rhs(const Matrix& w, const Matrix& cw, const Matrix& p, const Matrix& f) {
    return cw * f - w * (f * p);
}

} // namespace

RuleSpec RuleSpec::twj2s(std::vector<double> theta) {
    RuleSpec spec;
    spec.kind = RuleKind::TwJ2S;
    spec.theta = std::move(theta);
    return spec;
}

RuleSpec RuleSpec::n2s() { return RuleSpec{RuleKind::N2S, 0.0, {}}; }

RuleSpec RuleSpec::m2s(double alpha) {
    if (alpha < 0.0) {
        throw ContractError("m2s: alpha must be nonnegative");
    }
    return RuleSpec{RuleKind::M2S, alpha, {}};
}

RuleSpec RuleSpec::oja() { return RuleSpec{RuleKind::OjaSubspace, 0.0, {}}; }
RuleSpec RuleSpec::nl() { return RuleSpec{RuleKind::NL, 0.0, {}}; }
RuleSpec RuleSpec::nse() { return RuleSpec{RuleKind::NSE, 0.0, {}}; }

std::string RuleSpec::label() const {
    switch (kind) {
    case RuleKind::TwJ2S:
        return "twj2s";
    case RuleKind::N2S:
        return "n2s";
    case RuleKind::M2S: {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "m2s_a%g", alpha);
        return buffer;
    }
    case RuleKind::OjaSubspace:
        return "oja";
    case RuleKind::NL:
        return "nl";
    case RuleKind::NSE:
        return "nse";
    }
    return "unknown";
}

double objective_original(const Matrix& w, const Matrix& c) {
    require_dimensions(w, c);
    require_symmetric(c);
    const Matrix cw = c * w;
    double sum = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
        double quad = 0.0;
        for (std::size_t i = 0; i < w.rows(); ++i) {
            quad += w(i, j) * cw(i, j);
        }
        sum += quad * quad;
    }
    return 0.25 * sum;
}

double objective_modified(const Matrix& w, const Matrix& c, double alpha) {
    require_dimensions(w, c);
    require_symmetric(c);
    const Matrix p = w.transposed() * (c * w);
    double diag_sq = 0.0;
    double all_sq = 0.0;
    for (std::size_t j = 0; j < p.rows(); ++j) {
        for (std::size_t k = 0; k < p.cols(); ++k) {
            const double value = p(j, k) * p(j, k);
            all_sq += value;
            if (j == k) {
                diag_sq += value;
            }
        }
    }
    return 0.25 * ((1.0 + alpha) * diag_sq - alpha * all_sq);
}

Matrix grad_modified(const Matrix& w, const Matrix& c, double alpha) {
    require_dimensions(w, c);
    require_symmetric(c);
    const Matrix cw = c * w;
    const Matrix p = w.transposed() * cw;
    const std::vector<double> d = p.diagonal_vector();
    return (1.0 + alpha) * scale_columns(cw, d) - alpha * (cw * p);
}

Matrix rule_rhs(const RuleSpec& spec, const Matrix& w, const Matrix& c) {
    require_dimensions(w, c);
    require_symmetric(c);
    const std::size_t m = w.cols();
    const Matrix cw = c * w;
    const Matrix p = w.transposed() * cw;
    const std::vector<double> d = p.diagonal_vector();

    switch (spec.kind) {
    case RuleKind::TwJ2S: {
        std::vector<double> theta = spec.theta.empty() ? default_theta(m) : spec.theta;
        if (theta.size() != m) {
            throw ContractError("twj2s: theta size differs from column count");
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (!(theta[j] > 0.0) || (j > 0 && !(theta[j] > theta[j - 1]))) {
                throw ContractError("twj2s: theta entries must be positive and strictly increasing");
            }
        }
        return factored_rhs(w, cw, p, Matrix::diagonal(theta));
    }
    case RuleKind::N2S:
        return factored_rhs(w, cw, p, Matrix::diagonal(d));
    case RuleKind::M2S: {
        if (spec.alpha < 0.0) {
            throw ContractError("m2s: alpha must be nonnegative");
        }
        Matrix d_prime = -spec.alpha * p;
        for (std::size_t j = 0; j < m; ++j) {
            d_prime(j, j) = (1.0 + spec.alpha) * d[j] - spec.alpha * p(j, j);
        }
        return factored_rhs(w, cw, p, d_prime);
    }
    case RuleKind::OjaSubspace:
        return cw - w * p;
    case RuleKind::NSE:
        return 2.0 * scale_columns(cw, d) - w * scale_columns(p, d) -
               scale_columns(w, d) * p;
    case RuleKind::NL: {
        const Matrix gram = w.transposed() * w;
        const std::vector<double> d_star = diagonal_of_product(p, gram);
        return 5.0 * scale_columns(cw, d)     //
               - w * scale_columns(p, d)      // W W^T C W D
               - scale_columns(w, d) * p      // W D W^T C W
               - scale_columns(cw, d) * gram  // C W D W^T W
               - scale_columns(cw, d_star)    // C W D*
               - cw * scale_columns(gram, d); // C W W^T W D
    }
    }
    throw ContractError("rule_rhs: unknown rule kind");
}

Matrix m2s_form1_rhs(const Matrix& w, const Matrix& c, double alpha) {
    require_dimensions(w, c);
    require_symmetric(c);
    const Matrix cw = c * w;
    const Matrix p = w.transposed() * cw;
    const std::vector<double> d = p.diagonal_vector();
    const Matrix n2s_part = scale_columns(cw, d) - scale_columns(w, d) * p;
    const Matrix oja_part = cw - w * p;
    return (1.0 + alpha) * n2s_part - alpha * (oja_part * p);
}

DiagonalFactors compute_factors(const Matrix& w, const Matrix& c, double alpha) {
    require_dimensions(w, c);
    require_symmetric(c);
    const Matrix p = w.transposed() * (c * w);
    const Matrix gram = w.transposed() * w;
    DiagonalFactors factors;
    factors.d = p.diagonal_vector();
    factors.d_star = diagonal_of_product(p, gram);
    factors.d_prime = -alpha * p;
    for (std::size_t j = 0; j < p.rows(); ++j) {
        factors.d_prime(j, j) = (1.0 + alpha) * factors.d[j] - alpha * p(j, j);
    }
    return factors;
}

} // namespace sympca
