#pragma once

#include <stdexcept>
#include <string>

namespace aplim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Forward solving hit p0(n, z) == 0; the run cannot continue at this index.
struct LeadingCoefficientVanishes : Error {
    explicit LeadingCoefficientVanishes(long n)
        : Error("leading coefficient vanishes at n = " + std::to_string(n)), index(n) {}
    long index;
};

struct InsufficientPrecision : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// Determinant-built initial values disagree with the transcribed closed forms.
struct InitialValueMismatch : Error {
    using Error::Error;
};

// Functional-equation sign test cannot tell +1 from -1 at the current horizon.
struct AmbiguousSign : Error {
    using Error::Error;
};

struct NonFiniteIntegrand : Error {
    using Error::Error;
};

struct DataChecksumMismatch : Error {
    using Error::Error;
};

}  // namespace aplim
