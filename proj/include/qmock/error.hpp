#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmock {

enum class ErrorKind {
  ZeroLeadingTerm,
  InsufficientPrecision,
  ZeroFactor,
  NonTerminating,
  PoleAtTerm,
  NonThetaPower,
  DivisionByZeroTheta,
  NonGenericRho,
  NonConvergent,
  PreconditionFailed,
  UnknownId,
  StabilizationFailure,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroLeadingTerm: return "ZeroLeadingTerm";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::ZeroFactor: return "ZeroFactor";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::PoleAtTerm: return "PoleAtTerm";
    case ErrorKind::NonThetaPower: return "NonThetaPower";
    case ErrorKind::DivisionByZeroTheta: return "DivisionByZeroTheta";
    case ErrorKind::NonGenericRho: return "NonGenericRho";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::StabilizationFailure: return "StabilizationFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to report content.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qmock
