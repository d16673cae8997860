#pragma once

#include <stdexcept>
#include <string>

namespace lmcts {

// Base of every error raised by the library. Subclasses name the failure
// family so callers (the CLI, the harness) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

class OptimizationFailure : public Error {
public:
    using Error::Error;
};

class InvalidSchedule : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// A run aborted by an agent or environment error; names seed and round.
class RunFailure : public Error {
public:
    using Error::Error;
};

} // namespace lmcts
