#pragma once

#include "gradval/affine_monoids.hpp"
#include "gradval/monomial_extension.hpp"
#include "gradval/ordered_groups.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace gradval {

/// Monoidal transform S(i,j,k,l) on the S side: y_(i,j) = y'_(i,j) * y_(k,l).
/// Indices are 1-based block numbers and in-block positions; requires i < k
/// and (k,l) a T-index.
struct STransform {
  std::size_t i, j, k, l;
  bool operator==(const STransform &) const = default;
};

/// R-side substitution x_row = x'_row * prod x_w^{c_w}.
struct RTransform {
  std::size_t row; // 0-based
  std::vector<std::pair<std::size_t, Int>> factors;
  bool operator==(const RTransform &) const = default;
};

/// Absorbs the formal unit of x_variable into y_variable.
struct Rescale {
  std::size_t variable; // 0-based
  bool operator==(const Rescale &) const = default;
};

using TransformStep = std::variant<STransform, RTransform, Rescale>;

MonomialExtension apply_s_transform(const MonomialExtension &me,
                                    const STransform &step);
MonomialExtension apply_r_transform(const MonomialExtension &me,
                                    const RTransform &step);
MonomialExtension apply_rescale(const MonomialExtension &me, const Rescale &step);
MonomialExtension apply_step(const MonomialExtension &me,
                             const TransformStep &step);

struct MonomializationTrace {
  MonomialExtension initial;
  std::vector<TransformStep> steps;
  MonomialExtension final;
};

struct MonomializeOptions {
  // Exponent search bound; 0 means 8 * max |A entries|.
  Int exponent_bound = 0;
};

/// Rewrites an extension in triangular form into strong monomial form, row
/// by row in increasing order.
MonomializationTrace strong_monomialize(const MonomialExtension &me,
                                        const MonomializeOptions &options = {});

/// Replays the steps from trace.initial; throws ReplayMismatch unless the
/// result equals trace.final exactly and is in strong monomial form.
void verify_replay(const MonomializationTrace &trace);

struct CosetOptions {
  std::optional<ValueGroup> phi_nu;
  std::optional<ValueGroup> phi_nu_star;
  // Resolved exponent matrix E with A = Q E, |det Q| = 1; defaults to A.
  std::optional<ExactMatrix> E;
};

/// Λ with its map into Φ_ν*/Φ_ν.
struct CosetSystem {
  ParallelepipedBasis lambda;
  std::vector<OrderedGroupElement> values; // nu*(y^sigma) per Λ point
  std::vector<CosetLabel> labels;
  Int e;
  IntVector invariants; // invariant factors of Φ_ν*/Φ_ν
  ValueGroup phi_nu;
  ValueGroup phi_nu_star;
  ExactMatrix A;
  std::shared_ptr<const QuotientMap> quotient;

  std::size_t size() const { return lambda.points.size(); }
  std::optional<std::size_t> index_of(const IntVector &sigma) const;
};

/// Checks the index and isomorphism hypotheses and builds the coset system;
/// throws IndexHypothesisFailed / QuotientHypothesisFailed with a witness.
CosetSystem coset_system(const SSMForm &ssm, const CosetOptions &options = {});

/// Same, for an extension whose non-T rows are unit rows but which has not
/// been certified; dependent values then surface as hypothesis failures
/// instead of InvalidExtension.
CosetSystem coset_system(const MonomialExtension &me, const CosetOptions &options = {});

/// Representatives of Z^n / A^t Z^n, enumerated in mixed radix over the
/// Smith form of A^t.
std::vector<IntVector> quotient_elements(const ExactMatrix &A);

} // namespace gradval
