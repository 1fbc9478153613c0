#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entrosteer {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  DomainError,
  InvalidDistribution,
  InfiniteDivergence,
  MarginalMismatch,
  NotOrthonormal,
  NotPrime,
  DimensionMismatch,
  NotUnitary,
  OutOfRange,
  UnsupportedCombination,
  BudgetExceeded,
  SingularMarginal,
  InvalidPermutationMatrix,
  NonMonotone,
  NoViolation,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::MarginalMismatch: return "MarginalMismatch";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SingularMarginal: return "SingularMarginal";
    case ErrorCode::InvalidPermutationMatrix: return "InvalidPermutationMatrix";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::NoViolation: return "NoViolation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type.
///
/// `magnitude()` carries the size of the violation where one is meaningful
/// (e.g. the Hermiticity defect, the most negative eigenvalue, or the best
/// objective value reached before a budget ran out); it is 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace entrosteer
