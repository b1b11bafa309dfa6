#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iep {

enum class ErrorKind {
  kNotIncident,
  kMissingEdge,
  kBadDegree,
  kBadSize,
  kInfeasible,
  kParseError,
  kMalformedModel,
  kInvalidDecomposition,
  kInvalidNode,
  kTooLarge,
  kBudgetExhausted,
  kIterationBudgetExceeded,
  kDisconnected,
  kUnknownEdge,
  kInvalidArgument,
  kInvariantViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotIncident: return "NotIncident";
    case ErrorKind::kMissingEdge: return "MissingEdge";
    case ErrorKind::kBadDegree: return "BadDegree";
    case ErrorKind::kBadSize: return "BadSize";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kMalformedModel: return "MalformedModel";
    case ErrorKind::kInvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::kInvalidNode: return "InvalidNode";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kBudgetExhausted: return "BudgetExhausted";
    case ErrorKind::kIterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorKind::kDisconnected: return "Disconnected";
    case ErrorKind::kUnknownEdge: return "UnknownEdge";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the kinds above, so
// callers can branch on kind() instead of parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace iep
