#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rbpebble {

enum class ErrorCode {
  ParseError,
  CycleDetected,
  UnknownEndpoint,
  DuplicateEdge,
  DuplicateNode,
  InvalidGroup,
  InvalidR,
  GroupSizeMismatch,
  InvalidModel,
  IllegalMove,
  GoalNotReached,
  Infeasible,
  TooLarge,
  TooManyGroups,
  MalformedTrace,
  NotACover,
  KTooSmall,
  ParamsTooTight,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidR: return "InvalidR";
    case ErrorCode::GroupSizeMismatch: return "GroupSizeMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::GoalNotReached: return "GoalNotReached";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooManyGroups: return "TooManyGroups";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::ParamsTooTight: return "ParamsTooTight";
  }
  return "Unknown";
}

/// Base exception for every domain failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class IllegalReason {
  UnknownNode,
  RedBudgetExceeded,
  InputsNotRed,
  RecomputeForbidden,
  SourceNotComputable,
  AlreadyRed,
  DeleteForbidden,
  NoPebble,
  NotBlue,
  NotRed,
};

inline std::string_view to_string(IllegalReason reason) {
  switch (reason) {
    case IllegalReason::UnknownNode: return "UnknownNode";
    case IllegalReason::RedBudgetExceeded: return "RedBudgetExceeded";
    case IllegalReason::InputsNotRed: return "InputsNotRed";
    case IllegalReason::RecomputeForbidden: return "RecomputeForbidden";
    case IllegalReason::SourceNotComputable: return "SourceNotComputable";
    case IllegalReason::AlreadyRed: return "AlreadyRed";
    case IllegalReason::DeleteForbidden: return "DeleteForbidden";
    case IllegalReason::NoPebble: return "NoPebble";
    case IllegalReason::NotBlue: return "NotBlue";
    case IllegalReason::NotRed: return "NotRed";
  }
  return "Unknown";
}

/// A move that breaks a game rule. `index()` is set when the move came from a trace.
class IllegalMoveError : public Error {
 public:
  IllegalMoveError(IllegalReason reason, std::optional<std::size_t> index, const std::string& node)
      : Error(ErrorCode::IllegalMove, describe(reason, index, node)),
        reason_(reason),
        index_(index),
        node_(node) {}

  IllegalReason reason() const noexcept { return reason_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  const std::string& node() const noexcept { return node_; }

 private:
  static std::string describe(IllegalReason reason, std::optional<std::size_t> index,
                              const std::string& node) {
    std::string s(to_string(reason));
    if (index) s += " at move " + std::to_string(*index);
    return s + " (node '" + node + "')";
  }

  IllegalReason reason_;
  std::optional<std::size_t> index_;
  std::string node_;
};

}  // namespace rbpebble
