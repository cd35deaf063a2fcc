#pragma once

#include <stdexcept>
#include <string>

namespace wentzell {

// Invalid coefficient data (e.g. a non-positive b sample on the boundary).
struct CoefficientError : std::domain_error {
    using std::domain_error::domain_error;
};

// Vector/mesh size mismatch.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operation that requires the boundary component to be the trace of the
// interior component was handed an uncoupled vector.
struct UncoupledError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Asking for the wrong solvability certificate for the problem's coefficients.
struct CertificateError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wentzell
