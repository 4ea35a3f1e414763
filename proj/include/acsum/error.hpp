#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acsum {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedPoint,
  DivergentSeries,
  WindowOutOfRange,
  EmptyGrid,
  TooShort,
  KernelTooWide,
  GapTooWide,
  KernelVanishes,
  RangeTooShort,
  InsufficientCoefficients,
  TailNotControlled,
  HypothesisViolated,
  NotInvariant,
  NotAMean,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can triage without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::KernelTooWide: return "KernelTooWide";
    case ErrorCode::GapTooWide: return "GapTooWide";
    case ErrorCode::KernelVanishes: return "KernelVanishes";
    case ErrorCode::RangeTooShort: return "RangeTooShort";
    case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorCode::TailNotControlled: return "TailNotControlled";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotAMean: return "NotAMean";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace acsum
