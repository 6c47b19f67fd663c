#pragma once

#include "gradval/exact_lattice.hpp"
#include "gradval/numeric.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace gradval {

/// Weight basis of one archimedean block: {1} when radicand == 0, otherwise
/// {1, sqrt(radicand)} with radicand a positive non-square integer.
struct BlockWeights {
  Int radicand = 0;

  std::size_t width() const { return radicand == 0 ? 1 : 2; }
  bool operator==(const BlockWeights &) const = default;
};

/// Lexicographically ordered block group Q^{w_1} x ... x Q^{w_r}; the first
/// block dominates.
class GroupShape {
public:
  GroupShape() = default;
  explicit GroupShape(std::vector<BlockWeights> blocks);

  static std::shared_ptr<const GroupShape> make(std::vector<BlockWeights> blocks);
  static std::shared_ptr<const GroupShape> rational(std::size_t rank);

  std::size_t rank() const noexcept { return blocks_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const BlockWeights &block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<BlockWeights> &blocks() const noexcept { return blocks_; }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }

  bool operator==(const GroupShape &rhs) const { return blocks_ == rhs.blocks_; }

private:
  std::vector<BlockWeights> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
};

using ShapePtr = std::shared_ptr<const GroupShape>;

bool same_shape(const ShapePtr &a, const ShapePtr &b);

/// Sign of p + q*sqrt(d) decided exactly (d == 0 means q is ignored).
int quadratic_sign(const Rational &p, const Rational &q, const Int &d);

/// Element of a block group; coordinates are flattened in block order.
class OrderedGroupElement {
public:
  OrderedGroupElement() = default;
  OrderedGroupElement(ShapePtr shape, RationalVector coords);

  static OrderedGroupElement zero(ShapePtr shape);
  static OrderedGroupElement from_ints(ShapePtr shape,
                                       std::initializer_list<long> coords);

  const ShapePtr &shape() const noexcept { return shape_; }
  const RationalVector &coords() const noexcept { return coords_; }
  RationalVector block(std::size_t i) const;

  bool is_zero() const;
  int sign() const;
  // Sign of the component in block i as a real number.
  int block_sign(std::size_t i) const;
  std::size_t leading_block() const; // rank() when zero

  OrderedGroupElement operator+(const OrderedGroupElement &rhs) const;
  OrderedGroupElement operator-(const OrderedGroupElement &rhs) const;
  OrderedGroupElement operator-() const;
  OrderedGroupElement scaled(const Rational &factor) const;

  // Exact equality of coordinates; same ambient required.
  bool operator==(const OrderedGroupElement &rhs) const;

  std::string to_string() const;

private:
  ShapePtr shape_;
  RationalVector coords_;
};

/// Throws AmbientMismatch when the two elements live in different groups.
std::strong_ordering lex_compare(const OrderedGroupElement &a,
                                 const OrderedGroupElement &b);

/// Chain Phi_0 ⊃ Phi_1 ⊃ ... ⊃ Phi_r = 0; Phi_i consists of the elements
/// whose first i blocks vanish.
class IsolatedChain {
public:
  explicit IsolatedChain(ShapePtr shape) : shape_(std::move(shape)) {}

  std::size_t length() const { return shape_->rank(); }
  bool contains(std::size_t level, const OrderedGroupElement &g) const;
  const ShapePtr &shape() const noexcept { return shape_; }

private:
  ShapePtr shape_;
};

/// Largest i with g in Phi_i.
std::size_t isolated_level(const OrderedGroupElement &g,
                           const IsolatedChain &chain);

/// Finitely generated subgroup of a block group.
struct ValueGroup {
  ShapePtr shape;
  std::vector<OrderedGroupElement> generators;

  // Per-block rational rank of the ambient weight basis.
  std::vector<std::size_t> block_ranks() const;
};

ValueGroup make_value_group(ShapePtr shape,
                            std::vector<OrderedGroupElement> generators);

/// Canonical label of a coset g + small inside big.
struct CosetLabel {
  IntVector residues; // mixed radix, residues[i] in [0, moduli[i])
  IntVector moduli;   // invariant factors > 1 of big/small
  OrderedGroupElement representative;

  bool is_trivial() const;
  bool operator==(const CosetLabel &rhs) const { return residues == rhs.residues; }
  auto operator<=>(const CosetLabel &rhs) const { return residues <=> rhs.residues; }
};

/// Integer coordinates of big, reduction modulo small. Construction checks
/// containment and equal spans.
class QuotientMap {
public:
  QuotientMap(const ValueGroup &big, const ValueGroup &small);

  const Int &index() const noexcept { return index_; }
  const IntVector &invariants() const noexcept { return moduli_; }
  bool in_big(const OrderedGroupElement &g) const;
  bool in_small(const OrderedGroupElement &g) const;
  CosetLabel label(const OrderedGroupElement &g) const;
  // Element of big with the given SNF residues (inverse of label().residues).
  OrderedGroupElement element_for(const IntVector &residues) const;

private:
  IntVector scaled(const OrderedGroupElement &g) const;
  IntVector big_coordinates(const OrderedGroupElement &g) const;

  ShapePtr shape_;
  Int scale_ = 1;
  HermiteBasis big_basis_;
  HermiteBasis small_in_big_; // small's coordinates w.r.t. big's basis
  SmithDecomposition snf_;    // of the small coordinate matrix
  std::size_t first_nontrivial_ = 0;
  IntVector moduli_;
  Int index_ = 1;
};

/// [big : small]; InfiniteIndex when spans differ, NotASubgroup when small
/// is not contained in big.
Int subgroup_index(const ValueGroup &big, const ValueGroup &small);

CosetLabel coset_label(const OrderedGroupElement &g, const ValueGroup &small,
                       const ValueGroup &big);

/// True when both groups have the same generated subgroup.
bool same_group(const ValueGroup &a, const ValueGroup &b);

/// Rank of the span of the given elements over Q.
std::size_t rational_rank(const std::vector<OrderedGroupElement> &elements);

} // namespace gradval
