#pragma once

#include <stdexcept>
#include <string>

namespace sputnik {

/// Caller violated a precondition (mismatched lengths, unknown operator, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid run configuration or instance file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A run could not complete (e.g. an evaluation failed).
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sputnik
