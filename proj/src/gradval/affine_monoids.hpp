#pragma once

#include "gradval/exact_lattice.hpp"

#include <optional>
#include <vector>

namespace gradval {

/// Pointed, finitely generated submonoid of Z^n. The positivity functional
/// certifies pointedness: it is strictly positive on every generator.
class AffineMonoid {
public:
  AffineMonoid(std::size_t dim, std::vector<IntVector> generators,
               RationalVector positivity_functional);

  /// Uses the sum of the generators' coordinates' signs where possible;
  /// throws NotPointed when no functional is found among simple candidates.
  static AffineMonoid with_derived_functional(std::size_t dim,
                                              std::vector<IntVector> generators);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<IntVector> &generators() const noexcept { return generators_; }
  const RationalVector &functional() const noexcept { return functional_; }

  /// Exact membership by bounded search over nonnegative combinations.
  bool contains(const IntVector &v) const;
  /// True when v lies in the real cone spanned by the generators.
  bool cone_contains(const IntVector &v) const;

private:
  std::size_t dim_;
  std::vector<IntVector> generators_;
  RationalVector functional_;
  IntVector weights_; // integer-scaled functional values of the generators
  IntVector scaled_functional_;
};

/// Lattice points of the half-open parallelepiped spanned by n independent
/// vectors in Z^n.
struct ParallelepipedBasis {
  std::vector<IntVector> points; // lexicographically sorted, contains 0
  Int index;
  std::vector<IntVector> spanning; // the vectors v_1..v_n
};

struct SaturationResult {
  bool member = false;
  Int multiplier = 0; // certifying m with m*v in M (0 when not a member)
};

/// v is in the saturation of M iff m*v ∈ M for some m >= 1. Searches
/// 1 <= m <= box_bound; throws BoundTooSmall when v lies in the real cone
/// but no multiplier within the bound certifies membership.
SaturationResult saturation_membership(const IntVector &v, const AffineMonoid &M,
                                       const Int &box_bound);

ParallelepipedBasis parallelepiped_points(const std::vector<IntVector> &vectors);

/// Half-open box [lower, upper)^n.
struct LatticeBox {
  Int lower = 0;
  Int upper = 0;
};

struct DecompositionViolation {
  IntVector point;
  std::size_t hits = 0; // 0 = uncovered, >= 2 = overlapping cosets
};

struct DecompositionReport {
  LatticeBox box;
  std::size_t points_checked = 0; // saturation points inside the box
  std::vector<std::size_t> hits_per_coset;
  std::vector<DecompositionViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks that every saturation point in the box lies in exactly one coset
/// x + M, x ∈ Λ, where M is generated by the spanning vectors of Λ.
DecompositionReport verify_disjoint_decomposition(const ParallelepipedBasis &lambda,
                                                  const LatticeBox &box);
/// Same check with M given explicitly; M must be generated by exactly the
/// spanning vectors of Λ.
DecompositionReport verify_disjoint_decomposition(const ParallelepipedBasis &lambda,
                                                  const AffineMonoid &M,
                                                  const LatticeBox &box);

/// 4 * max(|det|, max |coordinate|) for the spanning vectors.
Int default_box_bound(const std::vector<IntVector> &vectors);

} // namespace gradval
