#pragma once

#include <stdexcept>
#include <string>

namespace leadlag {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad CSV record, bad binary header, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a domain invariant (crossed book,
/// decreasing cumulative volume, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (missing instrument, block count < 2, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An estimator is undefined on the given data (zero variance paths).
/// Deliberately not a silent zero: callers that resample must redraw.
class EstimatorError : public Error {
public:
    using Error::Error;
};

}  // namespace leadlag
