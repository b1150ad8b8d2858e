#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bott {

enum class ErrorCode {
  NonTriangular,
  BadDimension,
  IndexOutOfRange,
  AmbientMismatch,
  DimensionMismatch,
  SwapObstructed,
  BadSupport,
  ObstructionNonzero,
  NotQTrivial,
  Unverified,
  NotWellOrdered,
  WrongStage,
  UnmatchedForm,
  WrongShape,
  CorruptReport,
  ParseError,
  InternalInvariantViolation,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library are reported as a BottError
// carrying a machine-readable code next to the human-readable detail.
class BottError : public std::runtime_error {
 public:
  BottError(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Raised when an internal consistency check fails.  Never expected on a
// correct build.
[[noreturn]] void invariant_violation(const std::string& detail);

}  // namespace bott
