#include "doctest.h"

#include "gradval/error.hpp"
#include "gradval/generators.hpp"
#include "gradval/graded_algebra.hpp"
#include "support.hpp"

using namespace gradval;
using namespace testing_support;

namespace {

template <typename F> ErrorCode code_of(F &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Inconsistent;
}

std::shared_ptr<const GradedModule> module_for(const MonomialExtension &me, long f,
                                               long f0 = 1) {
  auto cs = std::make_shared<const CosetSystem>(coset_system(SSMForm(me)));
  GradedAlgebra base{ValueSemigroup(me.shape, induced_x_values(me)), Int(f0)};
  return GradedModule::create(cs, base, Int(f));
}

// x = y^2 with nu*(y) = 1/2: Φ_ν = Z inside Φ_ν* = (1/2) Z.
MonomialExtension square_root() {
  auto shape = GroupShape::rational(1);
  return make_extension(BlockStructure({1}, {1}), ExactMatrix{{2}},
                        {rational_element(shape, {q(1, 2)})});
}

MonomialExtension diag23() {
  auto shape = GroupShape::make({{2}});
  return make_extension(BlockStructure({2}, {2}), ExactMatrix{{2, 0}, {0, 3}},
                        {OrderedGroupElement(shape, {q(1), q(0)}),
                         OrderedGroupElement(shape, {q(0), q(1)})});
}

TermKey key(std::size_t sigma, std::size_t residue, RationalVector gamma, Rational phase = 0) {
  return TermKey{{sigma, residue}, std::move(gamma), std::move(phase)};
}

// Nonzero random element with degrees drawn from the base semigroup.
GradedModuleElement random_element(std::mt19937_64 &rng, const GradedModule &m) {
  GradedModuleElement::Terms terms;
  const auto &gens = m.base().semigroup.generators();
  const std::size_t f = m.residue_degree().get_ui();
  std::size_t count = uniform(rng, 1, 5);
  for (std::size_t t = 0; t < count; ++t) {
    auto g = OrderedGroupElement::zero(m.base().semigroup.shape());
    for (const auto &gen : gens)
      g = g + gen.scaled(Rational(uniform(rng, 0, 2)));
    RationalVector coeff(m.coefficient_dim());
    for (auto &c : coeff)
      c = q(uniform(rng, -3, 3), uniform(rng, 1, 2));
    terms[key(uniform(rng, 0, m.cosets().size() - 1), uniform(rng, 1, f), g.coords())] = coeff;
  }
  auto x = m.element(terms);
  return x.is_zero() ? random_element(rng, m) : x;
}

} // namespace

TEST_CASE("free rank and base change") {
  auto one = module_for(make_extension(BlockStructure({1}, {1}), ExactMatrix{{1}},
                                       {OrderedGroupElement::from_ints(GroupShape::rational(1), {1})}),
                        1);
  CHECK(free_rank(*one) == 1);
  CHECK(free_rank(*module_for(diag23(), 1)) == 6);
  auto sq = module_for(square_root(), 3);
  CHECK(free_rank(*sq) == 6);
  CHECK(sq->labels().size() == 6);

  auto shape = GroupShape::rational(1);
  auto alg = make_graded_algebra(ValueSemigroup(shape, {rational_element(shape, {q(1)}),
                                                        rational_element(shape, {q(5, 2)})}));
  CHECK(base_change_unramified(alg, 1).residue_degree == 1);
  auto twice = base_change_unramified(alg, 2);
  CHECK(twice.residue_degree == 2);
  CHECK(twice.semigroup.generators() == alg.semigroup.generators());
  CHECK(base_change_unramified(base_change_unramified(alg, 2), 3).residue_degree ==
        base_change_unramified(alg, 6).residue_degree);
  CHECK_THROWS_AS(base_change_unramified(alg, 0), Error);
}

TEST_CASE("element values") {
  auto m = module_for(square_root(), 1);
  REQUIRE(m->cosets().lambda.points == std::vector<IntVector>{{0}, {1}});
  auto single = m->element({{key(0, 1, {q(2)}), {q(1)}}});
  CHECK(element_value(single) == rational_element(GroupShape::rational(1), {q(2)}));
  auto two = m->element({{key(0, 1, {q(1)}), {q(1)}}, {key(1, 1, {q(1)}), {q(4)}}});
  CHECK(element_value(two) == rational_element(GroupShape::rational(1), {q(1)}));
  auto shifted = m->element({{key(0, 1, {q(2)}), {q(1)}}, {key(1, 1, {q(1)}), {q(4)}}});
  CHECK(element_value(shifted) == rational_element(GroupShape::rational(1), {q(3, 2)}));

  CHECK(code_of([&] { (void)element_value(m->zero()); }) == ErrorCode::ZeroElement);
  CHECK(code_of([&] { (void)m->element({{key(0, 1, {q(1, 2)}), {q(1)}}}); }) ==
        ErrorCode::GradingViolation);
  CHECK(code_of([&] { (void)m->element({{key(2, 1, {q(1)}), {q(1)}}}); }) ==
        ErrorCode::IndexError);
  CHECK(code_of([&] { (void)m->element({{key(0, 2, {q(1)}), {q(1)}}}); }) ==
        ErrorCode::IndexError);
  // Zero coefficients are dropped.
  CHECK(m->element({{key(0, 1, {q(1)}), {q(0)}}}).is_zero());
}

TEST_CASE("expansion is unique and reassembles") {
  auto m = module_for(square_root(), 1);
  CHECK(expand(m->zero()).empty());
  auto two = m->element({{key(0, 1, {q(1)}), {q(1)}}, {key(1, 1, {q(1)}), {q(4)}}});
  CHECK(expand(two).size() == 2);

  std::mt19937_64 rng(101);
  for (int i = 0; i < 20; ++i) {
    auto me = random_ssm(rng);
    auto mod = module_for(me, uniform(rng, 1, 2), uniform(rng, 1, 2));
    for (int s = 0; s < 5; ++s) {
      auto x = random_element(rng, *mod);
      auto parts = expand(x);
      CHECK(reassemble(mod, parts) == x);
      for (std::size_t p = 1; p < parts.size(); ++p)
        CHECK(parts[p - 1].first < parts[p].first);
    }
  }
}

TEST_CASE("valuation axioms at module level") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 20; ++i) {
    auto me = random_ssm(rng);
    auto mod = module_for(me, 1);
    for (int s = 0; s < 5; ++s) {
      auto x = random_element(rng, *mod);
      auto y = random_element(rng, *mod);
      auto sum = x + y;
      auto vx = element_value(x), vy = element_value(y);
      auto lo = lex_compare(vx, vy) <= 0 ? vx : vy;
      if (!sum.is_zero()) {
        CHECK(lex_compare(element_value(sum), lo) >= 0);
        if (!(vx == vy))
          CHECK(element_value(sum) == lo);
      }
      // The value differs from the minimizing label's value by an element of
      // Φ_ν.
      for (const auto &[k, c] : x.terms()) {
        auto v = OrderedGroupElement(me.shape, k.gamma) + mod->label_value(k.label);
        if (v == vx)
          CHECK(mod->cosets().quotient->in_small(vx - mod->label_value(k.label)));
      }
    }
  }
}

TEST_CASE("character action") {
  auto m = module_for(square_root(), 1);
  auto x = m->element({{key(0, 1, {q(1)}), {q(1)}}, {key(1, 1, {q(1)}), {q(3)}}});
  CHECK(galois_character_action({0}, x) == x);
  auto moved = galois_character_action({1}, x);
  GradedModuleElement::Terms expected{{key(0, 1, {q(1)}), {q(1)}},
                                      {key(1, 1, {q(1)}, q(1, 2)), {q(3)}}};
  CHECK(moved == m->element(expected));
  CHECK(galois_character_action({1}, moved) == x);
  auto base_only = m->element({{key(0, 1, {q(2)}), {q(5)}}});
  CHECK(galois_character_action({1}, base_only) == base_only);
}

TEST_CASE("invariant part is the fixed part") {
  auto d = module_for(diag23(), 1);
  auto fixed = fixed_labels(*d);
  REQUIRE(fixed.size() == 1);
  CHECK(d->cosets().lambda.points[fixed[0]] == IntVector{0, 0});

  auto m = module_for(square_root(), 1);
  auto x = m->element({{key(0, 1, {q(1)}), {q(1)}}, {key(1, 1, {q(1)}), {q(3)}}});
  CHECK(invariant_part(x) == m->element({{key(0, 1, {q(1)}), {q(1)}}}));

  auto one = module_for(make_extension(BlockStructure({1}, {1}), ExactMatrix{{1}},
                                       {OrderedGroupElement::from_ints(GroupShape::rational(1), {1})}),
                        2);
  auto w = one->element({{key(0, 1, {q(1)}), {q(1)}}, {key(0, 2, {q(3)}), {q(-1)}}});
  CHECK(invariant_part(w) == w);

  std::mt19937_64 rng(303);
  GeneratorParams small;
  small.max_index = 12;
  for (int i = 0; i < 25; ++i) {
    auto me = random_ssm(rng, small);
    auto mod = module_for(me, uniform(rng, 1, 2));
    std::vector<std::size_t> trivial;
    for (std::size_t s = 0; s < mod->cosets().size(); ++s)
      if (mod->cosets().labels[s].is_trivial())
        trivial.push_back(s);
    CHECK(fixed_labels(*mod) == trivial);
    CHECK(trivial.size() == 1);

    auto group = quotient_elements(me.A);
    CHECK(Int(group.size()) == mod->cosets().e);
    for (int s = 0; s < 3; ++s) {
      auto elem = random_element(rng, *mod);
      GradedModuleElement::Terms fixed_terms;
      for (const auto &[k, c] : elem.terms()) {
        bool stays = true;
        for (const auto &g : group) {
          auto single = mod->element({{k, c}});
          stays = stays && galois_character_action(g, single) == single;
        }
        if (stays)
          fixed_terms.emplace(k, c);
      }
      CHECK(invariant_part(elem) == mod->element(fixed_terms));
    }
  }
}

TEST_CASE("labels cover every coset f times") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 20; ++i) {
    auto me = random_ssm(rng);
    const long f = uniform(rng, 1, 3);
    auto mod = module_for(me, f);
    auto hits = coset_hits(*mod);
    CHECK(Int(hits.size()) == mod->cosets().e);
    for (const auto &[residues, count] : hits)
      CHECK(count == static_cast<std::size_t>(f));
    CHECK(Int(mod->labels().size()) == mod->cosets().e * f);
  }
}
