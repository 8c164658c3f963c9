#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locext {

enum class ErrorKind {
  NotHermitian,
  RangeViolation,
  DimensionMismatch,
  BoundsViolation,
  InvalidK,
  NotPPT,
  PreconditionViolation,
  PPTFailure,
  DecompositionMismatch,
  NonOrthogonalBasis,
  WitnessNotInRange,
  NonSingleVariableOverlap,
  ConvergenceFailure,
  RankAmbiguity,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can map it onto a diagnostic without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BoundsViolation: return "BoundsViolation";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::NotPPT: return "NotPPT";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::PPTFailure: return "PPTFailure";
    case ErrorKind::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorKind::NonOrthogonalBasis: return "NonOrthogonalBasis";
    case ErrorKind::WitnessNotInRange: return "WitnessNotInRange";
    case ErrorKind::NonSingleVariableOverlap: return "NonSingleVariableOverlap";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::RankAmbiguity: return "RankAmbiguity";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace locext
