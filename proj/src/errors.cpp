#include "prepspace/errors.hpp"

namespace prepspace {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::BoundaryState: return "BoundaryState";
    case ErrorCode::BoundaryCrossing: return "BoundaryCrossing";
    case ErrorCode::StepRejected: return "StepRejected";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace prepspace
