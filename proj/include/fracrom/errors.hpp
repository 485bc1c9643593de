#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracrom {

/// Base of all failures caused by the numbers rather than by the caller.
/// The CLI maps these to exit code 1; std::invalid_argument maps to 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroPivotError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Iterative method hit its cap. Carries the last iterate so callers can
/// inspect or restart.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                     double residual_norm, std::size_t iterations)
        : NumericalError(what),
          last_iterate_(std::move(last_iterate)),
          residual_norm_(residual_norm),
          iterations_(iterations) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double residual_norm() const noexcept { return residual_norm_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::vector<double> last_iterate_;
    double residual_norm_;
    std::size_t iterations_;
};

}  // namespace fracrom
