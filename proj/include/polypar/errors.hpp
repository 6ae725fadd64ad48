#pragma once

#include <stdexcept>
#include <string>

namespace polypar {

/* Base for every error thrown by the library. Input/format problems and
 * precondition violations derive from it so callers can map the whole
 * hierarchy onto process exit codes in one catch clause. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Malformed rational, vector, space, or operator text. */
struct ParseError : Error { using Error::Error; };

/* Vector/matrix/space dimensions do not agree. */
struct DimensionMismatch : Error { using Error::Error; };

/* A nonzero vector was required. */
struct ZeroVector : Error { using Error::Error; };

/* The supplied functionals do not span the dual space, so the induced
 * seminorm is degenerate. */
struct DegenerateNorm : Error { using Error::Error; };

/* A supplied functional is not a vertex of the dual ball. */
struct RedundantFunctional : Error { using Error::Error; };

/* Instance exceeds the supported size envelope (dim, dual count, or
 * enumeration blow-up). */
struct CapacityExceeded : Error { using Error::Error; };

/* decompose_interior_point called on a point outside the relative interior. */
struct NotInteriorPoint : Error { using Error::Error; };

/* A functional was named that is not among the space's signed dual vertices. */
struct UnknownFunctional : Error { using Error::Error; };

struct InvalidEpsilon : Error { using Error::Error; };
struct InvalidP : Error { using Error::Error; };
struct InvalidTolerance : Error { using Error::Error; };

struct NotBijective : Error { using Error::Error; };
struct NotPreserver : Error { using Error::Error; };

/* A smooth-cone image had more than one supporting functional; this would
 * contradict the facet-to-facet theorem and is surfaced, never repaired. */
struct MappingAmbiguous : Error { using Error::Error; };

struct PreconditionFailed : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };

/* Reading/writing files. */
struct IoError : Error { using Error::Error; };

/* An internal invariant failed; indicates a bug, mapped to exit code 2. */
struct InternalError : Error { using Error::Error; };

} // namespace polypar
