#pragma once

#include "gradval/ordered_groups.hpp"

#include <vector>

namespace gradval {

/// Semigroup generated by strictly positive elements of a block group; 0 is
/// always a member.
class ValueSemigroup {
public:
  /// Throws NonPositiveGenerator for a generator <= 0. Duplicates are
  /// dropped; generators are kept sorted under lex_compare.
  ValueSemigroup(ShapePtr shape, std::vector<OrderedGroupElement> generators);

  const ShapePtr &shape() const noexcept { return shape_; }
  const std::vector<OrderedGroupElement> &generators() const noexcept {
    return generators_;
  }
  /// Group generated by the semigroup.
  ValueGroup group() const { return make_value_group(shape_, generators_); }

private:
  ShapePtr shape_;
  std::vector<OrderedGroupElement> generators_;
};

/// Exact membership by bounded search, block by block. Throws NegativeQuery
/// when gamma < 0.
bool semigroup_membership(const OrderedGroupElement &gamma, const ValueSemigroup &S);

/// Elements of big that are missing from small, among the elements of big
/// whose every block (as a real number) is at most bound. Sorted under
/// lex_compare. Throws NotASubsemigroup when a generator of small is not in
/// big.
std::vector<OrderedGroupElement> semigroup_difference(const ValueSemigroup &small,
                                                      const ValueSemigroup &big,
                                                      const Rational &bound);

/// Semigroup of a generating sequence: every value positive (else
/// NonPositiveGenerator) and non-decreasing from the second value on, strictly
/// increasing from the third (else NonIncreasingTail).
ValueSemigroup generating_sequence_semigroup(const std::vector<OrderedGroupElement> &values);

} // namespace gradval
