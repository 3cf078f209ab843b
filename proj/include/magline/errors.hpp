#pragma once

#include <stdexcept>
#include <string>

namespace magline {

/// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Quantity diverges at the requested evaluation point (e.g. K(1)).
struct DivergenceError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Initial conditions incompatible with the requested solution family.
struct InconsistentIcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Adaptive integration could not continue; carries the last good time.
struct IntegrationFailure : std::runtime_error {
    double last_good_t;
    IntegrationFailure(const std::string& msg, double t)
        : std::runtime_error(msg), last_good_t(t) {}
};

/// Requested accuracy could not be reached (quadrature subdivision limit).
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace magline
