#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xtrellis {

enum class ErrorKind {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  FieldMismatch,
  DivisionByZero,
  AmbientMismatch,
  ZeroMatrix,
  TooLargeToEnumerate,
  LengthMismatch,
  G0RankDeficient,
  EmptyGenerator,
  BudgetExceeded,
  DegreeUnknown,
  NoneFound,
  NotDeterministic,
  HypothesisViolated,
  PreconditionViolated,
  RejectionBudgetExceeded,
  ConvergenceFailure,
  EmptySubset,
  DimensionZero,
  RankAssertionFailed,
  ClaimViolated,
  WitnessViolated,
  InputParseError,
  UsageError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::G0RankDeficient: return "G0RankDeficient";
    case ErrorKind::EmptyGenerator: return "EmptyGenerator";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DegreeUnknown: return "DegreeUnknown";
    case ErrorKind::NoneFound: return "NoneFound";
    case ErrorKind::NotDeterministic: return "NotDeterministic";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::DimensionZero: return "DimensionZero";
    case ErrorKind::RankAssertionFailed: return "RankAssertionFailed";
    case ErrorKind::ClaimViolated: return "ClaimViolated";
    case ErrorKind::WitnessViolated: return "WitnessViolated";
    case ErrorKind::InputParseError: return "InputParseError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Verdict failures on theorem-backed checks, as opposed to bad input.
  bool is_defect() const noexcept {
    return kind_ == ErrorKind::ClaimViolated || kind_ == ErrorKind::WitnessViolated ||
           kind_ == ErrorKind::RankAssertionFailed || kind_ == ErrorKind::NotDeterministic;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace xtrellis
