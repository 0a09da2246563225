#pragma once

#include <stdexcept>
#include <string>

namespace segrescope {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An index fell outside its axis range.
struct IndexError : Error {
    using Error::Error;
};

// A state that must be unit-norm is not.
struct NormalizationError : Error {
    using Error::Error;
};

// Malformed or inconsistent serialized input.
struct FormatError : Error {
    using Error::Error;
};

// A system shape is invalid for the requested operation.
struct ShapeError : Error {
    using Error::Error;
};

// A tensor factor is (numerically) zero where a nonzero one is required.
struct DegenerateFactorError : Error {
    using Error::Error;
};

// An argument is outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// The request exceeds a desk-scale resource guard.
struct ResourceError : Error {
    using Error::Error;
};

// A matrix that must have orthonormal columns does not.
struct IsometryError : Error {
    using Error::Error;
};

// A rank supplied by the caller disagrees with the numerical rank.
struct RankError : Error {
    using Error::Error;
};

} // namespace segrescope
