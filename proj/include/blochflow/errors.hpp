#pragma once

#include <stdexcept>
#include <string>

namespace blochflow {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A dimension argument is out of range (zero, negative, or unsupported).
struct InvalidDimensionError : Error {
    using Error::Error;
};

// Two operands have incompatible shapes.
struct DimensionMismatchError : Error {
    using Error::Error;
};

// An index argument is out of range.
struct InvalidIndexError : Error {
    using Error::Error;
};

// Non-finite values where finite ones are required.
struct NumericInputError : Error {
    using Error::Error;
};

// A scalar or option argument violates a precondition.
struct InvalidArgumentError : Error {
    using Error::Error;
};

// Adaptive numerics failed to reach the requested tolerance.
struct AccuracyError : Error {
    using Error::Error;
};

// The integration horizon is too short for the requested measure.
struct HorizonError : Error {
    using Error::Error;
};

// Bad experiment configuration (CLI / config file level).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace blochflow
