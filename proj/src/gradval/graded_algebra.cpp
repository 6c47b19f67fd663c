#include "gradval/graded_algebra.hpp"

#include "gradval/error.hpp"

#include <algorithm>

namespace gradval {

namespace {

bool all_zero(const RationalVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Rational &q) { return q == 0; });
}

Rational fractional_part(const Rational &q) {
  Rational r = q - Rational(floor_of(q));
  r.canonicalize();
  return r;
}

void accumulate(GradedModuleElement::Terms &terms, const TermKey &key,
                const RationalVector &coeff) {
  auto [it, inserted] = terms.emplace(key, coeff);
  if (!inserted) {
    for (std::size_t i = 0; i < coeff.size(); ++i)
      it->second[i] += coeff[i];
    if (all_zero(it->second))
      terms.erase(it);
  } else if (all_zero(coeff)) {
    terms.erase(it);
  }
}

} // namespace

GradedAlgebra make_graded_algebra(ValueSemigroup semigroup, Int residue_degree) {
  if (residue_degree < 1)
    fail(ErrorCode::SchemaError, "residue degree must be at least 1");
  return GradedAlgebra{std::move(semigroup), std::move(residue_degree)};
}

GradedAlgebra base_change_unramified(const GradedAlgebra &g, const Int &f) {
  if (f < 1)
    fail(ErrorCode::SchemaError, "residue degree must be at least 1");
  return GradedAlgebra{g.semigroup, g.residue_degree * f};
}

Int free_rank(const CosetSystem &cs, const Int &f) {
  if (f < 1)
    fail(ErrorCode::SchemaError, "residue degree must be at least 1");
  return Int(cs.size()) * f;
}

GradedModuleElement::GradedModuleElement(std::shared_ptr<const GradedModule> module,
                                         Terms terms)
    : module_(std::move(module)) {
  for (const auto &[key, coeff] : terms) {
    module_->check_term(key, coeff);
    if (!all_zero(coeff))
      terms_.emplace(key, coeff);
  }
}

GradedModuleElement GradedModuleElement::operator+(const GradedModuleElement &rhs) const {
  if (module_ != rhs.module_)
    fail(ErrorCode::AmbientMismatch, "elements belong to different modules");
  GradedModuleElement out = *this;
  for (const auto &[key, coeff] : rhs.terms_)
    accumulate(out.terms_, key, coeff);
  return out;
}

GradedModule::GradedModule(std::shared_ptr<const CosetSystem> cs, GradedAlgebra base,
                           Int f)
    : cs_(std::move(cs)), base_(std::move(base)), f_(std::move(f)) {
  if (f_ < 1)
    fail(ErrorCode::SchemaError, "residue degree must be at least 1");
  if (!same_shape(base_.semigroup.shape(), cs_->phi_nu.shape))
    fail(ErrorCode::AmbientMismatch, "base semigroup and coset system use different groups");
  auto snf = smith_normal_form(cs_->A.transpose());
  if (snf.rank() < cs_->A.rows())
    fail(ErrorCode::QuotientHypothesisFailed, "exponent matrix is singular");
  snf_U_ = std::move(snf.U);
  snf_d_ = snf.diagonal();
}

std::shared_ptr<const GradedModule>
GradedModule::create(std::shared_ptr<const CosetSystem> cs, GradedAlgebra base, Int f) {
  return std::shared_ptr<const GradedModule>(
      new GradedModule(std::move(cs), std::move(base), std::move(f)));
}

std::size_t GradedModule::coefficient_dim() const {
  return base_.residue_degree.get_ui();
}

std::vector<GradedBasisLabel> GradedModule::labels() const {
  std::vector<GradedBasisLabel> out;
  const std::size_t f = f_.get_ui();
  for (std::size_t s = 0; s < cs_->size(); ++s)
    for (std::size_t i = 1; i <= f; ++i)
      out.push_back({s, i});
  return out;
}

const OrderedGroupElement &GradedModule::label_value(const GradedBasisLabel &label) const {
  if (label.sigma >= cs_->size())
    fail(ErrorCode::IndexError, "sigma index out of range");
  return cs_->values[label.sigma];
}

void GradedModule::check_term(const TermKey &key, const RationalVector &coeff) const {
  if (key.label.sigma >= cs_->size())
    fail(ErrorCode::IndexError, "term refers to a point outside Λ");
  if (key.label.residue_index < 1 || Int(key.label.residue_index) > f_)
    fail(ErrorCode::IndexError, "residue index outside 1.." + to_string(f_));
  if (coeff.size() != coefficient_dim())
    fail(ErrorCode::DimensionMismatch,
         "coefficient vector must have length " + std::to_string(coefficient_dim()));
  if (key.phase < 0 || key.phase >= 1)
    fail(ErrorCode::SchemaError, "phase must lie in [0, 1)");
  const auto &shape = base_.semigroup.shape();
  if (key.gamma.size() != shape->dimension())
    fail(ErrorCode::DimensionMismatch, "degree has the wrong number of coordinates");
  OrderedGroupElement gamma(shape, key.gamma);
  if (gamma.sign() < 0 || !semigroup_membership(gamma, base_.semigroup))
    fail(ErrorCode::GradingViolation,
         "degree " + gamma.to_string() + " is not in the base value semigroup");
}

GradedModuleElement GradedModule::element(GradedModuleElement::Terms terms) const {
  return GradedModuleElement(shared_from_this(), std::move(terms));
}

Rational GradedModule::character(const IntVector &g, std::size_t sigma) const {
  if (g.size() != cs_->A.rows())
    fail(ErrorCode::DimensionMismatch, "group element has the wrong length");
  IntVector ug = snf_U_ * g;
  IntVector us = snf_U_ * cs_->lambda.points.at(sigma);
  Rational acc = 0;
  for (std::size_t i = 0; i < snf_d_.size(); ++i)
    if (snf_d_[i] > 1)
      acc += Rational(ug[i] * us[i], snf_d_[i]);
  return fractional_part(acc);
}

OrderedGroupElement element_value(const GradedModuleElement &x) {
  if (x.is_zero())
    fail(ErrorCode::ZeroElement, "the zero element has no value");
  const auto &m = *x.module();
  const auto &shape = m.base().semigroup.shape();
  std::optional<OrderedGroupElement> best;
  for (const auto &[key, coeff] : x.terms()) {
    auto v = OrderedGroupElement(shape, key.gamma) + m.label_value(key.label);
    if (!best || lex_compare(v, *best) < 0)
      best = std::move(v);
  }
  return *best;
}

std::vector<std::pair<std::size_t, GradedModuleElement>>
expand(const GradedModuleElement &x) {
  std::map<std::size_t, GradedModuleElement::Terms> parts;
  for (const auto &[key, coeff] : x.terms())
    parts[key.label.sigma].emplace(key, coeff);
  std::vector<std::pair<std::size_t, GradedModuleElement>> out;
  for (auto &[sigma, terms] : parts)
    out.emplace_back(sigma, x.module()->element(std::move(terms)));
  return out;
}

GradedModuleElement
reassemble(const std::shared_ptr<const GradedModule> &module,
           const std::vector<std::pair<std::size_t, GradedModuleElement>> &parts) {
  GradedModuleElement out = module->zero();
  for (const auto &[sigma, part] : parts) {
    for (const auto &[key, coeff] : part.terms())
      if (key.label.sigma != sigma)
        fail(ErrorCode::IndexError, "component holds a term of another label");
    out = out + part;
  }
  return out;
}

Int free_rank(const GradedModule &m) { return free_rank(m.cosets(), m.residue_degree()); }

GradedModuleElement galois_character_action(const IntVector &g,
                                            const GradedModuleElement &x) {
  const auto &m = *x.module();
  GradedModuleElement::Terms terms;
  for (const auto &[key, coeff] : x.terms()) {
    TermKey moved = key;
    moved.phase = fractional_part(key.phase + m.character(g, key.label.sigma));
    accumulate(terms, moved, coeff);
  }
  return m.element(std::move(terms));
}

GradedModuleElement invariant_part(const GradedModuleElement &x) {
  const auto &m = *x.module();
  GradedModuleElement::Terms terms;
  for (const auto &[key, coeff] : x.terms())
    if (m.cosets().labels[key.label.sigma].is_trivial())
      terms.emplace(key, coeff);
  return m.element(std::move(terms));
}

std::vector<std::size_t> fixed_labels(const GradedModule &m) {
  auto group = quotient_elements(m.cosets().A);
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < m.cosets().size(); ++s) {
    bool fixed = std::all_of(group.begin(), group.end(),
                             [&](const IntVector &g) { return m.character(g, s) == 0; });
    if (fixed)
      out.push_back(s);
  }
  return out;
}

std::map<IntVector, std::size_t> coset_hits(const GradedModule &m) {
  std::map<IntVector, std::size_t> out;
  for (const auto &label : m.labels())
    ++out[m.cosets().quotient->label(m.label_value(label)).residues];
  return out;
}

} // namespace gradval
