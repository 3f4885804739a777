#pragma once

#include <span>
#include <vector>

#include "sympca/matrix.hpp"
#include "sympca/rng.hpp"

namespace sympca {

enum class PresetName { Nearby, Spaced, Custom };

struct EigenvaluePreset {
    PresetName name = PresetName::Spaced;
    std::vector<double> values; // used when name == Custom

    static EigenvaluePreset nearby() { return {PresetName::Nearby, {}}; }
    static EigenvaluePreset spaced() { return {PresetName::Spaced, {}}; }
    static EigenvaluePreset custom(std::vector<double> v) {
        return {PresetName::Custom, std::move(v)};
    }
};

std::vector<double> preset_eigenvalues(const EigenvaluePreset& preset);

// Ground-truth spectrum: C = V * diag(lambdas) * V^T with distinct descending
// positive eigenvalues. Immutable after construction.
struct CovarianceModel {
    std::size_t n = 0;
    Matrix eigenvectors;         // V, orthogonal n x n
    std::vector<double> lambdas; // descending
    Matrix covariance;           // C, symmetric

    // The m columns of V with the largest eigenvalues.
    Matrix principal_eigenvectors(std::size_t m) const;
};

CovarianceModel make_covariance(std::vector<double> lambdas, Rng& rng);

// Deterministic variant with a caller-supplied eigenvector basis.
CovarianceModel make_covariance_with_basis(std::vector<double> lambdas, Matrix eigenvectors);

// Estimate matrix whose columns are the selected true eigenvectors (0-based,
// distinct indices). Any such point is a fixed point of the learning rules.
Matrix desired_fixed_point(const CovarianceModel& model, std::span<const int> selection);

} // namespace sympca
