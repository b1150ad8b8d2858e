#include "bott/error.hpp"

namespace bott {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTriangular: return "NonTriangular";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SwapObstructed: return "SwapObstructed";
    case ErrorCode::BadSupport: return "BadSupport";
    case ErrorCode::ObstructionNonzero: return "ObstructionNonzero";
    case ErrorCode::NotQTrivial: return "NotQTrivial";
    case ErrorCode::Unverified: return "Unverified";
    case ErrorCode::NotWellOrdered: return "NotWellOrdered";
    case ErrorCode::WrongStage: return "WrongStage";
    case ErrorCode::UnmatchedForm: return "UnmatchedForm";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::CorruptReport: return "CorruptReport";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

BottError::BottError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void invariant_violation(const std::string& detail) {
  throw BottError(ErrorCode::InternalInvariantViolation, detail);
}

}  // namespace bott
