#pragma once

#include <stdexcept>
#include <string>

namespace invsurf {

enum class ErrorKind {
  ZeroDivisor,
  DegenerateLeading,
  DomainViolation,
  EmptyInput,
  NoConvergence,
  DegreeTooSmall,
  DegenerateDerivative,
  NegativeOffdiagonal,
  RankDeficient,
  PointOutsideDomain,
  ComplexRootsRejected,
  ZeroAxis,
  ShapeMismatch,
  ParseError,
  DimensionMismatch,
  UnknownGenerator,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::DegenerateLeading: return "DegenerateLeading";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorKind::NegativeOffdiagonal: return "NegativeOffdiagonal";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::ComplexRootsRejected: return "ComplexRootsRejected";
    case ErrorKind::ZeroAxis: return "ZeroAxis";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace invsurf
