#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlrank {

enum class ErrorCode {
  NotSymmetric,
  NotEven,
  Degenerate,
  BadGenus,
  BadScale,
  BadName,
  EvenDenominator,
  NonpositiveDenominator,
  TooLarge,
  SnapFailure,
  WeightTooSmall,
  BadWeight,
  ParityMismatch,
  BadSignature,
  HypothesisNotAsserted,
  NegativeDiscriminant,
  NonIntegerResult,
  BadRange,
  BadFormat,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::BadGenus: return "BadGenus";
    case ErrorCode::BadScale: return "BadScale";
    case ErrorCode::BadName: return "BadName";
    case ErrorCode::EvenDenominator: return "EvenDenominator";
    case ErrorCode::NonpositiveDenominator: return "NonpositiveDenominator";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SnapFailure: return "SnapFailure";
    case ErrorCode::WeightTooSmall: return "WeightTooSmall";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::BadSignature: return "BadSignature";
    case ErrorCode::HypothesisNotAsserted: return "HypothesisNotAsserted";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::NonIntegerResult: return "NonIntegerResult";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::BadFormat: return "BadFormat";
  }
  return "Unknown";
}

/// Domain error raised by every nlrank operation. The code identifies the
/// violated precondition; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nlrank
