#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latorb {

enum class ErrorCode {
  DimensionMismatch,
  NotAtomic,
  InvalidRotation,
  DimensionTooLarge,
  IterationCapExceeded,
  ClosureCapExceeded,
  BoxTooLarge,
  NotStabilized,
  ParseError,
  InvalidDomain,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAtomic: return "NotAtomic";
    case ErrorCode::InvalidRotation: return "InvalidRotation";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above, so
/// callers (and the CLI's machine-readable error object) can switch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace latorb
