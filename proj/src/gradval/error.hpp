#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradval {

// Keep in sync with gv_status in include/gradval/gradval.h; the C layer maps
// these one-to-one.
enum class ErrorCode {
  SingularLattice = 10,
  DimensionMismatch,
  AmbientMismatch,
  InfiniteIndex,
  NotASubgroup,
  NotInGroup,
  BoundTooSmall,
  DependentGenerators,
  NotPointed,
  InvalidExtension,
  NonPositiveValue,
  SingularBlock,
  NotAlongValuation,
  IndexError,
  NotTriangularForm,
  NoNonnegativeLift,
  StepBoundExceeded,
  IndexHypothesisFailed,
  QuotientHypothesisFailed,
  ZeroElement,
  GradingViolation,
  NegativeQuery,
  NotASubsemigroup,
  NonPositiveGenerator,
  NonIncreasingTail,
  Inconsistent,
  CharMismatch,
  MissingIndex,
  InvalidRecord,
  ParseError,
  SchemaError,
  ReplayMismatch,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

} // namespace gradval
