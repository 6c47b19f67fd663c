#include "gradval/error.hpp"

namespace gradval {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::SingularLattice: return "SingularLattice";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::AmbientMismatch: return "AmbientMismatch";
  case ErrorCode::InfiniteIndex: return "InfiniteIndex";
  case ErrorCode::NotASubgroup: return "NotASubgroup";
  case ErrorCode::NotInGroup: return "NotInGroup";
  case ErrorCode::BoundTooSmall: return "BoundTooSmall";
  case ErrorCode::DependentGenerators: return "DependentGenerators";
  case ErrorCode::NotPointed: return "NotPointed";
  case ErrorCode::InvalidExtension: return "InvalidExtension";
  case ErrorCode::NonPositiveValue: return "NonPositiveValue";
  case ErrorCode::SingularBlock: return "SingularBlock";
  case ErrorCode::NotAlongValuation: return "NotAlongValuation";
  case ErrorCode::IndexError: return "IndexError";
  case ErrorCode::NotTriangularForm: return "NotTriangularForm";
  case ErrorCode::NoNonnegativeLift: return "NoNonnegativeLift";
  case ErrorCode::StepBoundExceeded: return "StepBoundExceeded";
  case ErrorCode::IndexHypothesisFailed: return "IndexHypothesisFailed";
  case ErrorCode::QuotientHypothesisFailed: return "QuotientHypothesisFailed";
  case ErrorCode::ZeroElement: return "ZeroElement";
  case ErrorCode::GradingViolation: return "GradingViolation";
  case ErrorCode::NegativeQuery: return "NegativeQuery";
  case ErrorCode::NotASubsemigroup: return "NotASubsemigroup";
  case ErrorCode::NonPositiveGenerator: return "NonPositiveGenerator";
  case ErrorCode::NonIncreasingTail: return "NonIncreasingTail";
  case ErrorCode::Inconsistent: return "Inconsistent";
  case ErrorCode::CharMismatch: return "CharMismatch";
  case ErrorCode::MissingIndex: return "MissingIndex";
  case ErrorCode::InvalidRecord: return "InvalidRecord";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::SchemaError: return "SchemaError";
  case ErrorCode::ReplayMismatch: return "ReplayMismatch";
  }
  return "Unknown";
}

} // namespace gradval
