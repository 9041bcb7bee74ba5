#pragma once

#include <stdexcept>
#include <string>

namespace latcoh {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sub-generator does not lie in the ambient lattice.
struct CoordinateError : Error {
    using Error::Error;
};

// Presented module has free rank (or is not p-torsion).
struct NotTorsion : Error {
    using Error::Error;
};

// Operator does not act nilpotently on the presented module.
struct NotNilpotent : Error {
    using Error::Error;
};

// Lattices live over different base rings / groups.
struct MismatchedBase : Error {
    using Error::Error;
};

// A divisor argument does not divide the group order.
struct BadDivisor : Error {
    using Error::Error;
};

// No block combination realizes the requested rank.
struct RankInfeasible : Error {
    using Error::Error;
};

// Operation requires a group of different (prime) order.
struct WrongGroup : Error {
    using Error::Error;
};

// Polynomial argument must be monic.
struct NotMonic : Error {
    using Error::Error;
};

// Malformed document or command line input.
struct ParseError : Error {
    using Error::Error;
};

// A value fails its structural invariants.
struct InvariantViolation : Error {
    using Error::Error;
};

// Parameter outside the supported range (e.g. prime too large).
struct UnsupportedPrime : Error {
    using Error::Error;
};

// A mathematically impossible state; indicates a bug in this library.
struct InternalError : Error {
    using Error::Error;
};

} // namespace latcoh
