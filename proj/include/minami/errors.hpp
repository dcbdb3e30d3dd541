#pragma once

#include <stdexcept>
#include <string>

namespace minami {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed caller input: non-finite entries, bad index sets, bad sizes.
struct InvalidInputError : Error {
    using Error::Error;
};

/// Configuration file or option rejected before any computation ran.
struct InvalidConfigError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

/// A matrix failed the positive-imaginary-part gate.
struct NotHerglotzError : InvalidInputError {
    NotHerglotzError(const std::string& what, double min_eig)
        : InvalidInputError(what), min_imag_eigenvalue(min_eig) {}
    double min_imag_eigenvalue;
};

/// Inversion refused: estimated condition number above the double-precision budget.
struct ConditioningError : Error {
    using Error::Error;
};

/// Last-entry pivot numerically zero in a Schur complement.
struct SingularPivotError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

/// Two algebraically equal routes disagreed beyond tolerance; the certificate
/// backing the input was too weak numerically.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

/// Closed-form integral evaluated outside its convergence region.
struct DomainError : Error {
    using Error::Error;
};

struct UnsupportedDimensionError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

/// Monte Carlo run produced no usable samples (or too many flagged ones).
struct EstimationFailedError : Error {
    using Error::Error;
};

}  // namespace minami
