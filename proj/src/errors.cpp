#include "rdmkit/errors.hpp"

#include <sstream>

namespace rdmkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDuodempotent: return "NotDuodempotent";
    case ErrorCode::NegativeOccupation: return "NegativeOccupation";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NonOrthonormal: return "NonOrthonormal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
  }
  return "Unknown";
}

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::NonSymmetric: return "NonSymmetric";
    case ViolationCode::TraceMismatch: return "TraceMismatch";
    case ViolationCode::BoundViolation: return "BoundViolation";
    case ViolationCode::SymmetryViolation: return "SymmetryViolation";
    case ViolationCode::ContractionMismatch: return "ContractionMismatch";
    case ViolationCode::IdentityResolutionFailure: return "IdentityResolutionFailure";
  }
  return "Unknown";
}

namespace {

std::string format_message(const std::vector<Violation>& violations,
                           const std::string& subject) {
  std::ostringstream os;
  os << subject << ": " << violations.size() << " invariant violation"
     << (violations.size() == 1 ? "" : "s");
  for (const auto& v : violations) {
    os << "; " << to_string(v.code) << " (" << v.magnitude << ")";
    if (!v.detail.empty()) os << ": " << v.detail;
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations,
                                 const std::string& subject)
    : Error(ErrorCode::ValidationFailure, format_message(violations, subject),
            violations.empty() ? 0.0 : violations.front().magnitude),
      violations_(std::move(violations)) {}

}  // namespace rdmkit
