#include "sympca/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympca/errors.hpp"
#include "sympca/linalg.hpp"

namespace sympca {

namespace {

void require_valid_spectrum(const std::vector<double>& lambdas) {
    if (lambdas.empty()) {
        throw ContractError("covariance spectrum must not be empty");
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) {
            throw ContractError("eigenvalue " + std::to_string(i) + " is not positive");
        }
        if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
            throw ContractError("eigenvalues must be distinct and strictly descending");
        }
    }
}

Matrix assemble_covariance(const Matrix& v, const std::vector<double>& lambdas) {
    const Matrix raw = scale_columns(v, lambdas) * v.transposed();
    const std::size_t n = v.rows();
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c(i, j) = 0.5 * (raw(i, j) + raw(j, i));
        }
    }
    return c;
}

} // namespace

std::vector<double> preset_eigenvalues(const EigenvaluePreset& preset) {
    switch (preset.name) {
    case PresetName::Nearby:
        return {0.91, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
    case PresetName::Spaced:
        return {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
    case PresetName::Custom:
        return preset.values;
    }
    throw ConfigError("unknown eigenvalue preset");
}

Matrix CovarianceModel::principal_eigenvectors(std::size_t m) const {
    return eigenvectors.leading_columns(m);
}

CovarianceModel make_covariance(std::vector<double> lambdas, Rng& rng) {
    require_valid_spectrum(lambdas);
    const std::size_t n = lambdas.size();
    Matrix v = random_orthogonal(n, rng);
    Matrix c = assemble_covariance(v, lambdas);
    return CovarianceModel{n, std::move(v), std::move(lambdas), std::move(c)};
}

CovarianceModel make_covariance_with_basis(std::vector<double> lambdas, Matrix eigenvectors) {
    require_valid_spectrum(lambdas);
    const std::size_t n = lambdas.size();
    if (eigenvectors.rows() != n || eigenvectors.cols() != n) {
        throw ContractError("make_covariance_with_basis: basis must be n x n");
    }
    const Matrix gram = eigenvectors.transposed() * eigenvectors;
    if (max_abs_diff(gram, Matrix::identity(n)) > 1e-10) {
        throw ContractError("make_covariance_with_basis: basis is not orthogonal");
    }
    Matrix c = assemble_covariance(eigenvectors, lambdas);
    return CovarianceModel{n, std::move(eigenvectors), std::move(lambdas), std::move(c)};
}

Matrix desired_fixed_point(const CovarianceModel& model, std::span<const int> selection) {
    if (selection.empty() || selection.size() > model.n) {
        throw ContractError("desired_fixed_point: selection size out of range");
    }
    for (std::size_t a = 0; a < selection.size(); ++a) {
        for (std::size_t b = a + 1; b < selection.size(); ++b) {
            if (selection[a] == selection[b]) {
                throw ContractError("desired_fixed_point: duplicate index " +
                                    std::to_string(selection[a]));
            }
        }
    }
    return model.eigenvectors.columns(selection);
}

} // namespace sympca
