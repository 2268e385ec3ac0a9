#pragma once

#include <stdexcept>
#include <string>

namespace lzs {

/// Bad user input; `field()` names the offending parameter or config key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Argument outside a special function's domain (non-finite, negative x, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rate formula degenerates (zero width Lorentzian sitting on a resonance).
class SingularRateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// ODE step size underflow. `time_reached()` is the last accepted time.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double t, const std::string& what)
        : std::runtime_error(what + " (t = " + std::to_string(t) + " ns)"), t_(t) {}
    double time_reached() const noexcept { return t_; }

private:
    double t_;
};

/// Bisection bracket does not contain a sign change.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lzs
