#pragma once

#include <stdexcept>
#include <string>

namespace thermoshift {

enum class ErrorCode {
  InvalidSpec,
  IntegerBeta,
  DegreeTooLarge,
  NonPositiveRemainder,
  AlphabetError,
  Inadmissible,
  NotAPrefix,
  BudgetExceeded,
  TailTruncation,
  NotConjugate,
  WindowTooLarge,
  MarginViolated,
  InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IntegerBeta: return "IntegerBeta";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::NonPositiveRemainder: return "NonPositiveRemainder";
    case ErrorCode::AlphabetError: return "AlphabetError";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::NotAPrefix: return "NotAPrefix";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TailTruncation: return "TailTruncationError";
    case ErrorCode::NotConjugate: return "NotConjugate";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::MarginViolated: return "MarginViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
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

}  // namespace thermoshift
