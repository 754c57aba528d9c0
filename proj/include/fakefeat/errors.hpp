#pragma once

#include <stdexcept>
#include <string>

namespace fakefeat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid problem configuration or plan.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A dimension field or matrix shape violates a constraint.
class DimensionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A parameter that must be non-negative is negative.
class NegativeParameterError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Signal power assigned inconsistently with empty blocks.
class PowerError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// The shifted Gram matrix could not be factored.
class SolveError : public Error {
public:
    using Error::Error;
};

// An operation that requires lambda > 0 was called with lambda = 0.
class LambdaZeroError : public Error {
public:
    using Error::Error;
};

// The underlying factorization failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace fakefeat
