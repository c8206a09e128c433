#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bicolor {

enum class ErrorCode {
  kInvalidInput,
  kSchema,
  kDimensionMismatch,
  kUnknownElement,
  kNotInAmbient,
  kNotInKPlus,
  kRationalAlpha,
  kIrrationalAlpha,
  kBadEpsilon,
  kAlphaOne,
  kNoNegativeValue,
  kFreeBackendUnsupported,
  kNotIndependent,
  kFamilyTooSmall,
  kNotClosed,
  kNotTranscendental,
  kGapTooSmall,
  kMatchInvalid,
  kAlphaMismatch,
  kBackendMismatch,
  kBudgetExceeded,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception. kInternal marks a broken
// invariant (a bug); every other code is a rejected input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

// Invariant check that survives release builds.
inline void check_invariant(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::kInternal, message);
}

}  // namespace bicolor
