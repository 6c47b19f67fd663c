#include "doctest.h"

#include "gradval/error.hpp"
#include "gradval/ordered_groups.hpp"
#include "support.hpp"

#include <set>

using namespace gradval;
using namespace testing_support;

namespace {

ErrorCode code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Inconsistent;
}

} // namespace

TEST_CASE("lexicographic comparison") {
  auto one = GroupShape::rational(1);
  auto two = GroupShape::rational(2);
  auto z = OrderedGroupElement::zero(two);
  CHECK(lex_compare(z, z) == std::strong_ordering::equal);
  CHECK(lex_compare(rational_element(one, {q(5, 2)}), rational_element(one, {q(3, 2)})) ==
        std::strong_ordering::greater);
  auto a = OrderedGroupElement::from_ints(two, {0, 1});
  auto b = OrderedGroupElement::from_ints(two, {1, -100});
  CHECK(lex_compare(a, b) == std::strong_ordering::less);
  CHECK(code_of([&] { (void)lex_compare(a, OrderedGroupElement::zero(one)); }) ==
        ErrorCode::AmbientMismatch);
}

TEST_CASE("quadratic blocks compare exactly") {
  auto shape = GroupShape::make({{2}});
  // 1 - sqrt(2) < 0 < 3 - 2 sqrt(2)
  auto a = rational_element(shape, {q(1), q(-1)});
  auto b = rational_element(shape, {q(3), q(-2)});
  CHECK(a.sign() < 0);
  CHECK(b.sign() > 0);
  CHECK(lex_compare(a, b) == std::strong_ordering::less);
  // 99/70 is just above sqrt(2).
  CHECK(quadratic_sign(q(99, 70), q(-1), 2) > 0);
  CHECK(quadratic_sign(q(-99, 70), q(1), 2) < 0);
  CHECK(quadratic_sign(q(0), q(0), 2) == 0);
  CHECK_THROWS_AS(GroupShape::make({{4}}), Error);
}

TEST_CASE("quadratic sign agrees with high precision evaluation") {
  std::mt19937_64 rng(99);
  const long radicands[] = {2, 3, 5, 6, 7, 10, 11};
  mpf_set_default_prec(256);
  for (int trial = 0; trial < 1000; ++trial) {
    long d = radicands[uniform(rng, 0, 6)];
    Rational p = q(uniform(rng, -2000, 2000), uniform(rng, 1, 300));
    Rational qq = q(uniform(rng, -2000, 2000), uniform(rng, 1, 300));
    mpf_class root = sqrt(mpf_class(d));
    mpf_class value = mpf_class(p) + mpf_class(qq) * root;
    int expected = (p == 0 && qq == 0) ? 0 : (value > 0 ? 1 : -1);
    // A nonzero p + q sqrt(d) is bounded away from zero far above 1e-50.
    if (expected != 0)
      REQUIRE(abs(value) > mpf_class("1e-50"));
    CHECK(quadratic_sign(p, qq, d) == expected);
  }
}

TEST_CASE("order is compatible with addition") {
  auto shape = GroupShape::make({{0}, {3}});
  std::mt19937_64 rng(7);
  auto draw = [&] {
    return rational_element(shape, {q(uniform(rng, -3, 3), uniform(rng, 1, 3)),
                                    q(uniform(rng, -9, 9), uniform(rng, 1, 4)),
                                    q(uniform(rng, -9, 9), uniform(rng, 1, 4))});
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto a = draw(), b = draw(), c = draw();
    auto ab = lex_compare(a, b);
    CHECK(lex_compare(a + c, b + c) == ab);
    CHECK(lex_compare(b, a) == (0 <=> ab));
  }
}

TEST_CASE("isolated levels and convexity") {
  auto two = GroupShape::rational(2);
  IsolatedChain chain(two);
  CHECK(isolated_level(OrderedGroupElement::zero(two), chain) == 2);
  CHECK(isolated_level(OrderedGroupElement::from_ints(two, {0, 5}), chain) == 1);
  CHECK(isolated_level(OrderedGroupElement::from_ints(two, {3, 0}), chain) == 0);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = OrderedGroupElement::from_ints(two, {uniform(rng, 0, 1), uniform(rng, -5, 5)});
    auto b = OrderedGroupElement::from_ints(two, {uniform(rng, 0, 1), uniform(rng, -5, 5)});
    if (a.sign() < 0 || lex_compare(a, b) > 0)
      continue;
    for (std::size_t level = 0; level <= 2; ++level)
      if (chain.contains(level, b))
        CHECK(chain.contains(level, a));
  }
}

TEST_CASE("subgroup index") {
  auto one = GroupShape::rational(1);
  auto Z = make_value_group(one, {rational_element(one, {q(1)})});
  auto twoZ = make_value_group(one, {rational_element(one, {q(2)})});
  auto half = make_value_group(one, {rational_element(one, {q(1, 2)})});
  CHECK(subgroup_index(Z, twoZ) == 2);
  CHECK(subgroup_index(half, Z) == 2);
  CHECK(code_of([&] { (void)subgroup_index(Z, half); }) == ErrorCode::NotASubgroup);

  auto two = GroupShape::rational(2);
  auto big = make_value_group(two, {OrderedGroupElement::from_ints(two, {1, 0}),
                                    OrderedGroupElement::from_ints(two, {0, 1})});
  auto small = make_value_group(two, {OrderedGroupElement::from_ints(two, {2, 0}),
                                      OrderedGroupElement::from_ints(two, {0, 3})});
  CHECK(subgroup_index(big, small) == 6);
  auto line = make_value_group(two, {OrderedGroupElement::from_ints(two, {2, 0})});
  CHECK(code_of([&] { (void)subgroup_index(big, line); }) == ErrorCode::InfiniteIndex);
}

TEST_CASE("coset labels") {
  auto one = GroupShape::rational(1);
  auto Z = make_value_group(one, {rational_element(one, {q(1)})});
  auto half = make_value_group(one, {rational_element(one, {q(1, 2)})});
  auto l = coset_label(rational_element(one, {q(3, 2)}), Z, half);
  CHECK(l.representative == rational_element(one, {q(1, 2)}));
  CHECK(coset_label(rational_element(one, {q(4)}), Z, half).is_trivial());

  auto two = GroupShape::rational(2);
  auto big = make_value_group(two, {OrderedGroupElement::from_ints(two, {1, 0}),
                                    OrderedGroupElement::from_ints(two, {0, 1})});
  auto small = make_value_group(two, {OrderedGroupElement::from_ints(two, {2, 0}),
                                      OrderedGroupElement::from_ints(two, {0, 3})});
  auto lab = coset_label(OrderedGroupElement::from_ints(two, {3, 4}), small, big);
  CHECK(lab.representative == OrderedGroupElement::from_ints(two, {1, 1}));
  CHECK(lab.moduli == IntVector{6});
}

TEST_CASE("coset labels separate exactly the cosets") {
  // Random full-rank sublattices of a quadratic block group; labels agree iff
  // the difference lies in the subgroup (checked by rational solving).
  auto shape = GroupShape::make({{0}, {5}});
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<OrderedGroupElement> basis;
    for (int k = 0; k < 3; ++k) {
      RationalVector c(3, Rational(0));
      c[k] = q(1, uniform(rng, 1, 3));
      basis.push_back(OrderedGroupElement(shape, c));
    }
    auto big = make_value_group(shape, basis);
    auto M = random_matrix(rng, 3, 3, 3);
    if (cofactor_det(M) == 0)
      continue;
    std::vector<OrderedGroupElement> gens;
    for (std::size_t i = 0; i < 3; ++i) {
      auto g = OrderedGroupElement::zero(shape);
      for (std::size_t j = 0; j < 3; ++j)
        g = g + basis[j].scaled(Rational(M(i, j)));
      gens.push_back(g);
    }
    auto small = make_value_group(shape, gens);
    QuotientMap qm(big, small);
    CHECK(qm.index() == abs_value(cofactor_det(M)));

    std::set<IntVector> seen;
    std::vector<std::pair<IntVector, OrderedGroupElement>> sample;
    for (int s = 0; s < 40; ++s) {
      auto g = OrderedGroupElement::zero(shape);
      for (const auto &b : basis)
        g = g + b.scaled(Rational(uniform(rng, -6, 6)));
      auto lab = qm.label(g);
      seen.insert(lab.residues);
      sample.emplace_back(lab.residues, g);
      CHECK(qm.in_small(g - lab.representative));
    }
    CHECK(Int(seen.size()) <= qm.index());
    // Oracle: g ~ h iff (g - h) has integral coordinates in the small
    // generators, i.e. adj(M^t) c = 0 mod det.
    ExactMatrix Mt = M.transpose();
    auto adj = adjugate_oracle(Mt);
    Int det = cofactor_det(Mt);
    for (std::size_t a = 0; a < sample.size(); ++a)
      for (std::size_t b = a + 1; b < sample.size(); ++b) {
        auto diff = sample[a].second - sample[b].second;
        IntVector coords(3);
        for (std::size_t k = 0; k < 3; ++k) {
          Rational c = diff.coords()[k] / basis[k].coords()[k];
          REQUIRE(c.get_den() == 1);
          coords[k] = c.get_num();
        }
        bool same = true;
        for (const auto &x : adj * coords)
          same = same && x % det == 0;
        CHECK((sample[a].first == sample[b].first) == same);
      }
  }
}

TEST_CASE("labels exhaust the quotient on a spanning sample") {
  auto two = GroupShape::rational(2);
  auto big = make_value_group(two, {OrderedGroupElement::from_ints(two, {1, 0}),
                                    OrderedGroupElement::from_ints(two, {0, 1})});
  auto small = make_value_group(two, {OrderedGroupElement::from_ints(two, {2, 2}),
                                      OrderedGroupElement::from_ints(two, {0, 4})});
  QuotientMap qm(big, small);
  std::set<IntVector> labels;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      labels.insert(qm.label(OrderedGroupElement::from_ints(two, {a, b})).residues);
  CHECK(Int(labels.size()) == qm.index());
  CHECK(qm.index() == 8);
  for (const auto &r : labels)
    CHECK(qm.label(qm.element_for(r)).residues == r);
}

TEST_CASE("group equality and rational rank") {
  auto one = GroupShape::rational(1);
  auto a = make_value_group(one, {rational_element(one, {q(1)}), rational_element(one, {q(5, 2)})});
  auto b = make_value_group(one, {rational_element(one, {q(1, 2)})});
  CHECK(same_group(a, b));
  CHECK_FALSE(same_group(a, make_value_group(one, {rational_element(one, {q(1)})})));
  auto shape = GroupShape::make({{2}});
  CHECK(rational_rank({rational_element(shape, {q(1), q(0)}), rational_element(shape, {q(0), q(1)}),
                       rational_element(shape, {q(2), q(3)})}) == 2);
}
