#pragma once

#include <stdexcept>
#include <string>

namespace valuation {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input document could not be read or decoded (bad JSON, wrong field type).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Inputs decoded fine but violate a model invariant (shares = 0, tax rate
/// outside [0,1), non-consecutive forecast years, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation received inputs that make it meaningless (zero market
/// variance, zero total debt, zero total capital). Treated as a validation
/// failure by the CLI.
class DegenerateInputError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Gordon perpetuity with g >= r: the series diverges.
class DivergentPerpetuityError : public Error {
public:
    using Error::Error;
};

} // namespace valuation
