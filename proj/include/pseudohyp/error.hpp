#pragma once

#include <stdexcept>
#include <string>

namespace pseudohyp {

enum class ErrorCode {
  DimensionMismatch,
  NonPositiveParameter,
  NotIsotropicPlane,
  DegeneratePairing,
  NotSpacelike,
  Precondition,
  NoConvergence,
  NonConformalChart,
  LightconeProximity,
  OutsideWindow,
  BallTouchesBoundary,
  InvalidSchedule,
  NonMonotone,
  AmbiguousDomain,
  Unsupported,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::NotIsotropicPlane: return "NotIsotropicPlane";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonConformalChart: return "NonConformalChart";
    case ErrorCode::LightconeProximity: return "LightconeProximity";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::BallTouchesBoundary: return "BallTouchesBoundary";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::AmbiguousDomain: return "AmbiguousDomain";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pseudohyp
