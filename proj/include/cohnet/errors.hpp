#pragma once

#include <stdexcept>
#include <string>

namespace cohnet {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Occupation tuple does not belong to the sector it was ranked against.
class SectorMismatch : public Error { using Error::Error; };
// Mode counts or indices do not fit the state they are applied to.
class ShapeError : public Error { using Error::Error; };
// Empty or full keep set in a partial trace.
class InvalidBipartition : public Error { using Error::Error; };
// Induced basis of a partial trace exceeds the requested per-mode cutoff.
class TruncationExceeded : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class NotPSD : public Error { using Error::Error; };
// Malformed network, Kerr or sweep description.
class SpecError : public Error { using Error::Error; };
// Beam splitter with zero transmission (theta = pi) has no finite label.
class SingularAngle : public Error { using Error::Error; };
// Superposition whose normalization vanishes.
class DegenerateSuperposition : public Error { using Error::Error; };
// Logical-qubit basis collapses because the two branches coincide on a side.
class DegenerateLogicalBasis : public Error { using Error::Error; };
// Output file could not be written.
class IoError : public Error { using Error::Error; };

}  // namespace cohnet
