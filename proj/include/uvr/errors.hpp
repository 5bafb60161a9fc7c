#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace uvr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter, state or config value failed validation. `field` names the
/// offending entry (e.g. "ibar[0]").
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An operation was applied to a state, lift or law of the wrong model variant.
class VariantMismatch : public Error {
public:
    using Error::Error;
};

/// A gradient could not be evaluated (non-finite probe value or result).
class GradientError : public Error {
public:
    using Error::Error;
};

/// Time integration failed: a non-finite stage derivative or a midpoint
/// solve that did not converge.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double t, double residual = 0.0)
        : Error(what), t_(t), residual_(residual) {}

    double time() const noexcept { return t_; }
    double residual() const noexcept { return residual_; }

private:
    double t_;
    double residual_;
};

}  // namespace uvr
