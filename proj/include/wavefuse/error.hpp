#pragma once

#include <stdexcept>
#include <string>

namespace wavefuse {

enum class ErrorCode {
  FilterUnknown,
  Dim,
  Level,
  Tree,
  ShapeMismatch,
  Empty,
  LabelDup,
  Magic,
  Truncated,
  Maxval,
  Region,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FilterUnknown: return "E_FILTER_UNKNOWN";
    case ErrorCode::Dim:           return "E_DIM";
    case ErrorCode::Level:         return "E_LEVEL";
    case ErrorCode::Tree:          return "E_TREE";
    case ErrorCode::ShapeMismatch: return "E_SHAPE_MISMATCH";
    case ErrorCode::Empty:         return "E_EMPTY";
    case ErrorCode::LabelDup:      return "E_LABEL_DUP";
    case ErrorCode::Magic:         return "E_MAGIC";
    case ErrorCode::Truncated:     return "E_TRUNCATED";
    case ErrorCode::Maxval:        return "E_MAXVAL";
    case ErrorCode::Region:        return "E_REGION";
  }
  return "E_UNKNOWN";
}

/// Validation failure: the input violates a documented contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Environment failure (unreadable file, failed write), as opposed to a
/// validation failure on well-read input.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wavefuse
