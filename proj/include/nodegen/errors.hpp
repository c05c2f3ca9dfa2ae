#pragma once

#include <stdexcept>
#include <string>

namespace nodegen {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (files, formats, unknown names).
struct IoError : Error {
    using Error::Error;
};

/// A linear system whose pivot fell below the singularity threshold.
struct SingularMatrixError : Error {
    using Error::Error;
};

/// An operation was called with arguments violating its contract.
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace nodegen
