#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qboid {

// Stable error vocabulary shared by validation, conversions and the CLI.
enum class ErrorCode {
  BadQ,
  Empty,
  BadValence,
  NotBipartite,
  Disconnected,
  BadRotation,
  DanglingEdge,
  NotATree,
  BadInternalValence,
  BadPartition,
  BadInvolution,
  BadPermutation,
  NotRealizable,
  InvalidCutSet,
  SignatureMismatch,
  BadBasepoint,
  LimitExceeded,
  BadCenter,
  BadPairing,
  BadReport,
  NumericalFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadQ: return "BadQ";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::BadValence: return "BadValence";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BadRotation: return "BadRotation";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::BadInternalValence: return "BadInternalValence";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::BadInvolution: return "BadInvolution";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::InvalidCutSet: return "InvalidCutSet";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::BadBasepoint: return "BadBasepoint";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::BadCenter: return "BadCenter";
    case ErrorCode::BadPairing: return "BadPairing";
    case ErrorCode::BadReport: return "BadReport";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

struct Violation {
  ErrorCode code;
  std::string detail;

  std::string str() const { return std::string(to_string(code)) + ": " + detail; }
};

// Thrown by operations whose preconditions hold structurally but fail for the
// given value, e.g. a tree diagram that is not realizable as a graph.
struct DomainError : std::runtime_error {
  ErrorCode code;

  DomainError(ErrorCode c, const std::string& what)
      : std::runtime_error(std::string(to_string(c)) + ": " + what), code(c) {}
};

// Validation result: either a value or the full list of violations found.
template <class T>
struct Checked {
  std::optional<T> value;
  std::vector<Violation> violations;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  static Checked pass(T v) { return Checked{std::move(v), {}}; }
  static Checked fail(std::vector<Violation> errs) { return Checked{std::nullopt, std::move(errs)}; }
};

}  // namespace qboid
