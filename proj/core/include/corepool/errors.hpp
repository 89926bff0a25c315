#pragma once

#include <stdexcept>

namespace corepool {

// Base class for all corepool errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Use case number outside {1, 2, 3}.
class InvalidUsecaseError : public Error {
public:
    using Error::Error;
};

// Workload spec violates its range/count constraints.
class SpecError : public Error {
public:
    using Error::Error;
};

// (prb, protocol, bandwidth) key not present in the measurement table.
class MeasurementNotFoundError : public Error {
public:
    using Error::Error;
};

// Fewer than two distinct rates: the log-linear fit has no unique solution.
class UnderdeterminedFitError : public Error {
public:
    using Error::Error;
};

// Fit produced a non-positive slope (flat or decreasing data).
class DegenerateFitError : public Error {
public:
    using Error::Error;
};

// Argument outside the operation's domain (rate <= 0, load outside [0,1], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An SDR process exceeds one core and can never be placed.
class InfeasibleProcessError : public Error {
public:
    using Error::Error;
};

// Instance too large for the exhaustive oracle.
class OracleSizeError : public Error {
public:
    using Error::Error;
};

// Power profile document is malformed or violates curve invariants.
class ProfileFormatError : public Error {
public:
    using Error::Error;
};

// Statistics requested over an empty sample set.
class EmptySampleError : public Error {
public:
    using Error::Error;
};

// Savings are undefined because the baseline is zero.
class UndefinedSavingsError : public Error {
public:
    using Error::Error;
};

// Malformed CSV/JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace corepool
