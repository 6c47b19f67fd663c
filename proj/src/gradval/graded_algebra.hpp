#pragma once

#include "gradval/monomialization.hpp"
#include "gradval/value_semigroups.hpp"

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

namespace gradval {

/// Graded algebra over its value semigroup; the degree-0 part has dimension
/// residue_degree over the base field.
struct GradedAlgebra {
  ValueSemigroup semigroup;
  Int residue_degree = 1;
};

GradedAlgebra make_graded_algebra(ValueSemigroup semigroup, Int residue_degree = 1);

/// Same grading semigroup, residue degree multiplied by f.
GradedAlgebra base_change_unramified(const GradedAlgebra &g, const Int &f);

/// |Λ| * f.
Int free_rank(const CosetSystem &cs, const Int &f);

struct GradedBasisLabel {
  std::size_t sigma;          // index into Λ
  std::size_t residue_index;  // 1..f
  auto operator<=>(const GradedBasisLabel &) const = default;
};

/// Key of one homogeneous term: basis label, degree gamma in the base
/// semigroup, and a formal root-of-unity phase in [0, 1).
struct TermKey {
  GradedBasisLabel label;
  RationalVector gamma;
  Rational phase;
  bool operator<(const TermKey &rhs) const {
    return std::tie(label, gamma, phase) < std::tie(rhs.label, rhs.gamma, rhs.phase);
  }
  bool operator==(const TermKey &rhs) const {
    return label == rhs.label && gamma == rhs.gamma && phase == rhs.phase;
  }
};

class GradedModule;

/// Finite sum of homogeneous terms; zero coefficient vectors are never
/// stored.
class GradedModuleElement {
public:
  using Terms = std::map<TermKey, RationalVector>;

  GradedModuleElement() = default;
  GradedModuleElement(std::shared_ptr<const GradedModule> module, Terms terms);

  const std::shared_ptr<const GradedModule> &module() const noexcept { return module_; }
  const Terms &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  GradedModuleElement operator+(const GradedModuleElement &rhs) const;
  bool operator==(const GradedModuleElement &rhs) const { return terms_ == rhs.terms_; }

private:
  std::shared_ptr<const GradedModule> module_;
  Terms terms_;
};

/// Free module over the base graded algebra on the e*f labels
/// (sigma, residue_index); label (sigma, i) sits in degree nu*(y^sigma).
class GradedModule : public std::enable_shared_from_this<GradedModule> {
public:
  static std::shared_ptr<const GradedModule>
  create(std::shared_ptr<const CosetSystem> cs, GradedAlgebra base, Int f);

  const CosetSystem &cosets() const noexcept { return *cs_; }
  const std::shared_ptr<const CosetSystem> &coset_ptr() const noexcept { return cs_; }
  const GradedAlgebra &base() const noexcept { return base_; }
  const Int &residue_degree() const noexcept { return f_; }
  std::size_t coefficient_dim() const;
  std::vector<GradedBasisLabel> labels() const;
  const OrderedGroupElement &label_value(const GradedBasisLabel &label) const;

  /// Throws GradingViolation when gamma is not in the base semigroup,
  /// IndexError for an unknown label, DimensionMismatch for a bad coefficient.
  void check_term(const TermKey &key, const RationalVector &coeff) const;

  GradedModuleElement element(GradedModuleElement::Terms terms) const;
  GradedModuleElement zero() const { return element({}); }

  /// Character value (in [0,1)) of the class g on the label sigma.
  Rational character(const IntVector &g, std::size_t sigma) const;

private:
  GradedModule(std::shared_ptr<const CosetSystem> cs, GradedAlgebra base, Int f);

  std::shared_ptr<const CosetSystem> cs_;
  GradedAlgebra base_;
  Int f_;
  ExactMatrix snf_U_; // U * A^t * V = D
  IntVector snf_d_;
};

/// Minimum of gamma + value(sigma) over the terms; throws ZeroElement.
OrderedGroupElement element_value(const GradedModuleElement &x);

/// Components by Λ index, in increasing sigma.
std::vector<std::pair<std::size_t, GradedModuleElement>>
expand(const GradedModuleElement &x);
GradedModuleElement
reassemble(const std::shared_ptr<const GradedModule> &module,
           const std::vector<std::pair<std::size_t, GradedModuleElement>> &parts);

Int free_rank(const GradedModule &m);

/// Multiplies each term by the character chi(g, sigma), tracked as a phase.
GradedModuleElement galois_character_action(const IntVector &g,
                                            const GradedModuleElement &x);

/// Terms whose sigma lies in the trivial coset.
GradedModuleElement invariant_part(const GradedModuleElement &x);

/// Λ indices fixed by every character, found by running through all of
/// Z^n / A^t Z^n.
std::vector<std::size_t> fixed_labels(const GradedModule &m);

/// Number of labels whose value falls in each coset of Φ_ν, keyed by coset
/// residues.
std::map<IntVector, std::size_t> coset_hits(const GradedModule &m);

} // namespace gradval
