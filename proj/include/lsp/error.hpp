#pragma once

#include <stdexcept>
#include <string>

namespace lsp {

enum class ErrorCode {
  InvalidArgument,
  DegreeZero,
  ZeroElement,
  NotMember,
  MismatchedDenominator,
  Reducible,
  EmbeddingFailure,
  ScalarKindMismatch,
  ArityMismatch,
  NotHyperbolic,
  Undecided,
  RepairNoSolution,
  RepairDegenerate,
  RepairNoRealSolution,
  RepairNoRationalScaling,
  GenusOne,
  SamplingFailed,
  EmptyWord,
  InsufficientData,
  NonAlgebraic,
  Commuting,
  CapsExhausted,
  DegenerateTrace,
  Unsupported,
  TailModelMissing,
  BudgetExceeded,
  ParseError,
  PrecisionExhausted,
  VerificationFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lsp
