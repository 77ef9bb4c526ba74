#pragma once

#include <stdexcept>
#include <string>

namespace bds {

enum class ErrorCode {
  kNotHermitian,
  kNegativeSpectrum,
  kDimensionMismatch,
  kNotAState,
  kInvalidProbabilities,
  kUnphysical,
  kOutOfRange,
  kNotNormalized,
  kInvalidLayout,
  kOptimizerFailure,
  kParse,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; `code()` tells callers which
// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bds
