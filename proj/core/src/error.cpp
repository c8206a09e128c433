#include "bicolor/error.hpp"

namespace bicolor {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kNotInAmbient: return "NotInAmbient";
    case ErrorCode::kNotInKPlus: return "NotInKPlus";
    case ErrorCode::kRationalAlpha: return "RationalAlpha";
    case ErrorCode::kIrrationalAlpha: return "IrrationalAlpha";
    case ErrorCode::kBadEpsilon: return "BadEpsilon";
    case ErrorCode::kAlphaOne: return "AlphaOne";
    case ErrorCode::kNoNegativeValue: return "NoNegativeValue";
    case ErrorCode::kFreeBackendUnsupported: return "FreeBackendUnsupported";
    case ErrorCode::kNotIndependent: return "NotIndependent";
    case ErrorCode::kFamilyTooSmall: return "FamilyTooSmall";
    case ErrorCode::kNotClosed: return "NotClosed";
    case ErrorCode::kNotTranscendental: return "NotTranscendental";
    case ErrorCode::kGapTooSmall: return "GapTooSmall";
    case ErrorCode::kMatchInvalid: return "MatchInvalid";
    case ErrorCode::kAlphaMismatch: return "AlphaMismatch";
    case ErrorCode::kBackendMismatch: return "BackendMismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace bicolor
