#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hflat {

enum class ErrorCode {
  NonCollinear,
  DegenerateConfiguration,
  EigenSolverFailure,
  InvalidInput,
  CoincidentPoints,
  NotInterior,
  OutsideDomain,
  EmptyInput,
  FaceMembershipViolated,
  EmptySubset,
  NotConverged,
  NonPositiveCoordinates,
  LengthMismatch,
  NotSimultaneouslyDiagonalizable,
  NoSimplexFound,
  VertexNotFixed,
  MinSetEmpty,
  NotPolytope,
  NonBoundaryLimit,
  OrbitBlowup,
  ParseError,
  ValidationError,
  UnknownCommand,
  IoError,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonCollinear: return "NonCollinear";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::FaceMembershipViolated: return "FaceMembershipViolated";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NonPositiveCoordinates: return "NonPositiveCoordinates";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSimultaneouslyDiagonalizable: return "NotSimultaneouslyDiagonalizable";
    case ErrorCode::NoSimplexFound: return "NoSimplexFound";
    case ErrorCode::VertexNotFixed: return "VertexNotFixed";
    case ErrorCode::MinSetEmpty: return "MinSetEmpty";
    case ErrorCode::NotPolytope: return "NotPolytope";
    case ErrorCode::NonBoundaryLimit: return "NonBoundaryLimit";
    case ErrorCode::OrbitBlowup: return "OrbitBlowup";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported through this type;
/// `code()` lets callers branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace hflat
