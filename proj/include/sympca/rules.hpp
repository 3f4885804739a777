#pragma once

#include <string>
#include <vector>

#include "sympca/matrix.hpp"

namespace sympca {

// Right-hand sides are reported with unit time constant; the learning rate is
// applied by the integrator.
enum class RuleKind { TwJ2S, N2S, M2S, OjaSubspace, NL, NSE };

struct RuleSpec {
    RuleKind kind = RuleKind::N2S;
    double alpha = 0.0;        // weight of the off-diagonal penalty (M2S)
    std::vector<double> theta; // TwJ2S weights; empty means diag{j/m}

    static RuleSpec twj2s(std::vector<double> theta = {});
    static RuleSpec n2s();
    static RuleSpec m2s(double alpha);
    static RuleSpec oja();
    static RuleSpec nl();
    static RuleSpec nse();

    std::string label() const; // "n2s", "m2s_a5", ... for file names and legends
};

struct DiagonalFactors {
    std::vector<double> d;      // dg{W^T C W}
    std::vector<double> d_star; // dg{W^T C W W^T W}
    Matrix d_prime;             // (1+alpha) diag(d) - alpha W^T C W
};

// J(W) = 1/4 sum_j (w_j^T C w_j)^2
double objective_original(const Matrix& w, const Matrix& c);

// J(W) = 1/4 [(1+alpha) sum_j (w_j^T C w_j)^2 - alpha sum_jk (w_j^T C w_k)^2];
// diagonal terms keep weight 1, off-diagonal terms get weight -alpha.
double objective_modified(const Matrix& w, const Matrix& c, double alpha);

// dJ/dW of the modified objective: (1+alpha) C W D - alpha C W W^T C W.
Matrix grad_modified(const Matrix& w, const Matrix& c, double alpha);

Matrix rule_rhs(const RuleSpec& spec, const Matrix& w, const Matrix& c);

// The arrangement of M2S that isolates an Oja-subspace factor:
// (1+alpha)(CWD - WDW^TCW) - alpha (CW - WW^TCW)(W^TCW).
// Algebraically equal to rule_rhs for the M2S spec.
Matrix m2s_form1_rhs(const Matrix& w, const Matrix& c, double alpha);

DiagonalFactors compute_factors(const Matrix& w, const Matrix& c, double alpha);

} // namespace sympca
