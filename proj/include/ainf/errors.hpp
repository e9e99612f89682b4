#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RingMismatch : Error {
    using Error::Error;
};

struct NonUnit : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct NotAComplex : Error {
    using Error::Error;
};

/// Homology over Z_(p) has torsion, so no homotopy retraction onto it exists.
struct NonFreeHomology : Error {
    using Error::Error;
};

struct NonInvertibleLinearPart : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct DegreeNotDivisible : Error {
    using Error::Error;
};

struct ProductsNonzero : Error {
    using Error::Error;
};

/// An identity that must hold by construction failed; indicates a bug.
struct InvariantViolation : Error {
    using Error::Error;
};

struct UnknownFixture : Error {
    using Error::Error;
};

}  // namespace ainf
