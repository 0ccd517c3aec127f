#pragma once

#include <stdexcept>
#include <string>

namespace dualspin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on an argument or configuration was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The integrator encountered a non-finite state; carries the time of failure.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double t_s) : Error(what), t_s_(t_s) {}
    double time_s() const { return t_s_; }

private:
    double t_s_;
};

/// Not enough data to evaluate a diagnostic (too few samples, crossings, ...).
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// A statistic is undefined for the given input (e.g. K of a constant signal).
class UndefinedStatistic : public Error {
public:
    using Error::Error;
};

/// Configuration file is malformed, has unknown keys, or fails validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A sweep checkpoint does not match the requested grid.
class CheckpointMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace dualspin
