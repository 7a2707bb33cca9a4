#pragma once

// Exception types thrown by the holo library. Everything derives from
// holo::Error so callers can catch the whole family at once; the subtypes
// exist because tests and the CLI distinguish failure modes.

#include <stdexcept>
#include <string>

namespace holo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape disagreement between operands (or a non-square input where a square
// one is required).
struct DimensionMismatch : Error {
    using Error::Error;
};

// Scalar polar phase of a numerically-zero number.
struct ZeroInput : Error {
    using Error::Error;
};

// Polar unitary factor of a matrix whose smallest singular value is below
// the rank tolerance. Carries the offending singular values and, when the
// matrix is a link in a sequence, which link it was (-1 otherwise).
struct RankDeficient : Error {
    RankDeficient(const std::string& msg, int link_index, double smin, double smax)
        : Error(msg), link(link_index), sigma_min(smin), sigma_max(smax) {}
    int link;
    double sigma_min;
    double sigma_max;
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NotAntiHermitian : Error {
    using Error::Error;
};
// Positive-definite input required (Gram matrix with an eigenvalue at or
// below the positivity tolerance).
struct NotPositive : Error {
    using Error::Error;
};
// Hermitian square root of a matrix with a genuinely negative eigenvalue.
struct NegativeEigenvalue : Error {
    using Error::Error;
};
struct NotUnitary : Error {
    using Error::Error;
};
struct NotTracePreserving : Error {
    using Error::Error;
};

// Channel zoo and path registry lookups.
struct UnknownName : Error {
    using Error::Error;
};
struct BadArity : Error {
    using Error::Error;
};
struct ParamOutOfRange : Error {
    using Error::Error;
};

// Grid and path problems.
struct EmptyPath : Error {
    using Error::Error;
};
struct NonMonotoneGrid : Error {
    using Error::Error;
};
struct IntegratorFailure : Error {
    using Error::Error;
};

// Gauge-potential closed form requires the Bloch vector of the Gram matrix
// off the unit sphere.
struct XNormOne : Error {
    using Error::Error;
};

// Amplitude construction and the Uhlmann bridge.
struct NotMaximalKraus : Error {
    using Error::Error;
};
struct BadBasis : Error {
    using Error::Error;
};
struct NotFaithful : Error {
    using Error::Error;
};
struct NotCyclic : Error {
    using Error::Error;
};

// Frame families of subspaces.
struct FrameDiscontinuity : Error {
    using Error::Error;
};
// A block's holonomy trace is numerically zero, so its phase is undefined.
struct VanishingTrace : Error {
    VanishingTrace(const std::string& msg, int block_index)
        : Error(msg), block(block_index) {}
    int block;
};
struct CompletionFailure : Error {
    using Error::Error;
};

// File and report parsing.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace holo
