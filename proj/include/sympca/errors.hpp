#pragma once

#include <stdexcept>
#include <string>

namespace sympca {

// Caller broke an operation's stated precondition (shape mismatch, bad range, ...).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Unknown preset or malformed configuration value.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Matrix is numerically singular where an inverse-type operation was requested.
class SingularError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Iterative solver did not reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A simulation left the representable range (non-finite entries or a singular
// Gram matrix during back-projection). Carries the failing step when known.
class DivergenceError : public std::runtime_error {
  public:
    explicit DivergenceError(const std::string& message, long step = -1)
        : std::runtime_error(step >= 0 ? "step " + std::to_string(step) + ": " + message
                                       : message),
          step_(step) {}

    long step() const { return step_; }

  private:
    long step_;
};

} // namespace sympca
