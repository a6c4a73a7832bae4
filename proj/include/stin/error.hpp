#pragma once

#include <stdexcept>
#include <string>

namespace stin {

/// Invalid or inconsistent scenario input. `key()` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Adaptive quadrature ran out of subdivisions above tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double value() const noexcept { return value_; }
    double error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

/// Expected node count above the sampler's memory guard.
class SamplingGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stin
