#pragma once

#include <stdexcept>
#include <string>

namespace latticeem {

enum class ErrorCode {
  // exact arithmetic
  NotRational,
  Singular,
  OrderTooLarge,
  // polytope geometry
  NotSimple,
  NotIntegral,
  NotPrimitive,
  Unbounded,
  Redundant,
  Empty,
  Degenerate,
  NonGeneric,
  DecompositionViolated,
  TooLarge,
  // one-dimensional machinery
  JumpPoint,
  LambdaOne,
  QuadratureFailure,
  // face groups
  NotInjective,
  PartitionViolated,
  ClaimViolated,
  NotRegular,
  // plumbing
  ParseError,
  InvalidArgument,
  InternalError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latticeem
