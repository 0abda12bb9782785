// Error taxonomy: every failure caused by caller input or configured guards
// throws Error with a machine-readable kind; internal invariants use assert.
#pragma once

#include <stdexcept>
#include <string>

namespace msmb {

enum class ErrorKind {
  NotPointed,
  ZeroColumn,
  BoundTooLarge,
  BudgetExceeded,
  NonDistinctEntries,
  InvalidInput,
  Unsupported,
  GuardExceeded,
  DimensionGuard,
  NonConvergence,
  NotReducing,
  IndexOutOfRange,
  SumMismatch,
  ParseError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonDistinctEntries: return "NonDistinctEntries";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::GuardExceeded: return "GuardExceeded";
    case ErrorKind::DimensionGuard: return "DimensionGuard";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotReducing: return "NotReducing";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace msmb
