#pragma once

#include <stdexcept>
#include <string>

namespace mimtilt {

enum class ErrorCode {
  NegativeProb,
  NotNormalized,
  DuplicateLabel,
  TooFewAtoms,
  AllZeroCounts,
  LabelMismatch,
  SupportMismatch,
  SupportViolation,
  DegeneratePmf,
  BetaOutOfRange,
  InfeasibleBudget,
  NoConvergence,
  AlphabetTooLarge,
  NoFeasiblePoint,
  InfeasibleSeed,
  TooLarge,
  InvalidArgument,
  ParseError,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeProb: return "NegativeProb";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::TooFewAtoms: return "TooFewAtoms";
    case ErrorCode::AllZeroCounts: return "AllZeroCounts";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::DegeneratePmf: return "DegeneratePmf";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::InfeasibleBudget: return "InfeasibleBudget";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::InfeasibleSeed: return "InfeasibleSeed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace mimtilt
