#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace rlw {

/// Raised when a parameter violates its documented precondition.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The tension/spacing pair makes the basis denominator p*h*cosh(ph) - sinh(ph) vanish.
class DegenerateTension : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A pivot fell below the guard during a banded factorization.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& what,
                            double time = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), time_(time) {}

    /// Simulation time at which the failure happened (NaN when not time-stepping).
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Every candidate of a tension scan failed.
class NoFeasibleTension : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rlw
