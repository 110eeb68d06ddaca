#pragma once

#include <stdexcept>
#include <string>

namespace prepspace {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotNormalized,
  NegativeProbability,
  NotUnitary,
  InvalidFrame,
  NotHermitian,
  BoundaryState,
  BoundaryCrossing,
  StepRejected,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prepspace
