#pragma once

#include <stdexcept>
#include <string>

namespace logsymp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data.
struct ValidationError : Error {
    using Error::Error;
};

struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

/// A term was not divisible by the requested coordinate.
struct NonDivisible : Error {
    using Error::Error;
};

/// No admissible contraction index exists for a homotopy solve.
struct NoValidIndex : Error {
    using Error::Error;
};

/// An enumeration hit its cap while its frontier was still nonempty.
/// The computation is inconclusive, not wrong.
struct CapExceeded : Error {
    using Error::Error;
};

struct W1Violated : ValidationError {
    using ValidationError::ValidationError;
};

/// The obstruction at some order has a component the recursion cannot
/// absorb. Indicates a bug or corrupted input, never a normal outcome.
struct JacobiResidue : Error {
    using Error::Error;
};

struct IsotropicVector : ValidationError {
    using ValidationError::ValidationError;
};

struct NotSymmetrizable : ValidationError {
    using ValidationError::ValidationError;
};

struct NotDistinguished : ValidationError {
    using ValidationError::ValidationError;
};

struct NotFullRank : Error {
    using Error::Error;
};

/// A consistency check that should be unreachable failed.
struct InternalError : Error {
    using Error::Error;
};

} // namespace logsymp
