#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdmkit {

enum class ErrorCode {
  NonSymmetric,
  NotPSD,
  DimensionMismatch,
  NotDuodempotent,
  NegativeOccupation,
  NotRepresentable,
  TooLarge,
  InvalidPartition,
  NonOrthonormal,
  InvalidArgument,
  ParseError,
  SchemaVersionMismatch,
  ValidationFailure,
};

const char* to_string(ErrorCode code);

/// Single error type for all operation failures. `magnitude` carries the
/// offending value where one exists: the eigenvalue for NotPSD and
/// NegativeOccupation, the deviation norm for NotDuodempotent and
/// NonOrthonormal, zero otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double magnitude = 0.0)
      : std::runtime_error(message), code_(code), magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

enum class ViolationCode {
  NonSymmetric,
  TraceMismatch,
  BoundViolation,
  SymmetryViolation,
  ContractionMismatch,
  IdentityResolutionFailure,
};

const char* to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  double magnitude;
  std::string detail;
};

/// Thrown by the rdm validators. Carries every violated invariant of the
/// candidate value, not just the first one found.
class ValidationError : public Error {
 public:
  ValidationError(std::vector<Violation> violations, const std::string& subject);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace rdmkit
