#include "doctest.h"

#include "gradval/affine_monoids.hpp"
#include "gradval/error.hpp"
#include "support.hpp"

#include <set>

using namespace gradval;
using namespace testing_support;

namespace {

AffineMonoid monoid(std::vector<IntVector> gens) {
  const std::size_t dim = gens.front().size();
  return AffineMonoid::with_derived_functional(dim, std::move(gens));
}

// Exhaustive membership: all combinations with coefficients up to `limit`.
bool member_oracle(const std::vector<IntVector> &gens, const IntVector &v, long limit) {
  const std::size_t k = gens.size();
  std::vector<long> c(k, 0);
  for (;;) {
    IntVector s(v.size(), Int(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        s[j] += c[i] * gens[i][j];
    if (s == v)
      return true;
    std::size_t i = 0;
    while (i < k && c[i] == limit) {
      c[i] = 0;
      ++i;
    }
    if (i == k)
      return false;
    ++c[i];
  }
}

} // namespace

TEST_CASE("saturation membership examples") {
  auto M1 = monoid({{2, 0}, {0, 2}, {1, 1}});
  auto r = saturation_membership({1, 1}, M1, 10);
  CHECK(r.member);
  CHECK(r.multiplier == 1);

  auto M2 = monoid({{2, 0}, {0, 2}});
  r = saturation_membership({1, 1}, M2, 10);
  CHECK(r.member);
  CHECK(r.multiplier == 2);
  CHECK(saturation_membership({0, 0}, M2, 1).member);
  CHECK_FALSE(saturation_membership({-1, 1}, M2, 10).member);

  try {
    (void)saturation_membership({1, 1}, M2, 1);
    FAIL("expected BoundTooSmall");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::BoundTooSmall);
  }
}

TEST_CASE("monoid construction requires a positive functional") {
  CHECK_THROWS_AS(AffineMonoid(2, {{1, 0}, {-1, 0}}, {q(1), q(0)}), Error);
  CHECK_THROWS_AS(monoid({{1, 0}, {-1, 0}}), Error);
  AffineMonoid m(2, {{1, 0}, {1, 0}, {0, 1}}, {q(1), q(1)});
  CHECK(m.generators().size() == 2);
}

TEST_CASE("monoid membership matches exhaustive search") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVector> gens;
    std::size_t k = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < k; ++i)
      gens.push_back({uniform(rng, 1, 4), uniform(rng, -2, 3)});
    AffineMonoid M(2, gens, {q(1), q(0)});
    for (int s = 0; s < 20; ++s) {
      IntVector v{uniform(rng, 0, 8), uniform(rng, -4, 8)};
      CHECK(M.contains(v) == member_oracle(M.generators(), v, 8));
      if (M.contains(v)) {
        auto sat = saturation_membership(v, M, 5);
        CHECK(sat.member);
        CHECK(sat.multiplier == 1);
      }
    }
  }
}

TEST_CASE("parallelepiped points") {
  auto p = parallelepiped_points({{1, 0}, {0, 1}});
  CHECK(p.points == std::vector<IntVector>{{0, 0}});
  CHECK(p.index == 1);

  p = parallelepiped_points({{2, 0}, {0, 3}});
  CHECK(p.index == 6);
  std::vector<IntVector> expected;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 3; ++b)
      expected.push_back({a, b});
  CHECK(p.points == expected);

  p = parallelepiped_points({{1, 1}, {0, 2}});
  CHECK(p.points == std::vector<IntVector>{{0, 0}, {0, 1}});
  CHECK(p.index == 2);

  CHECK_THROWS_AS(parallelepiped_points({{1, 2}, {2, 4}}), Error);
}

TEST_CASE("parallelepiped points are a transversal of the lattice") {
  std::mt19937_64 rng(12);
  int done = 0;
  while (done < 40) {
    std::size_t n = uniform(rng, 1, 3);
    std::vector<IntVector> vs;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v(n);
      for (auto &x : v)
        x = uniform(rng, -5, 5);
      vs.push_back(v);
    }
    ExactMatrix V = ExactMatrix::from_columns(vs, n);
    Int det = cofactor_det(V);
    if (det == 0)
      continue;
    ++done;
    auto p = parallelepiped_points(vs);
    CHECK(Int(p.points.size()) == abs_value(det));
    // Pairwise inequivalent modulo the lattice, each inside the half-open
    // parallelepiped.
    auto adj = adjugate_oracle(V);
    std::set<IntVector> keys;
    for (const auto &x : p.points) {
      IntVector a = adj * x;
      IntVector key;
      for (auto &c : a) {
        Rational coord(c, det);
        coord.canonicalize();
        CHECK(coord >= 0);
        CHECK(coord < 1);
        key.push_back(floor_mod(c, abs_value(det)));
      }
      keys.insert(key);
    }
    CHECK(keys.size() == p.points.size());
  }
}

TEST_CASE("disjoint decomposition examples") {
  auto unit = parallelepiped_points({{1, 0}, {0, 1}});
  auto rep = verify_disjoint_decomposition(unit, {0, 5});
  CHECK(rep.ok());
  CHECK(rep.points_checked == 25);
  CHECK(rep.hits_per_coset == std::vector<std::size_t>{25});

  auto p = parallelepiped_points({{2, 0}, {0, 3}});
  rep = verify_disjoint_decomposition(p, {0, 6});
  CHECK(rep.ok());
  CHECK(rep.points_checked == 36);
  for (auto h : rep.hits_per_coset)
    CHECK(h == 6);

  auto p2 = parallelepiped_points({{1, 1}, {0, 2}});
  auto M = monoid({{1, 1}, {0, 2}});
  rep = verify_disjoint_decomposition(p2, M, {0, 4});
  CHECK(rep.ok());
  CHECK(rep.hits_per_coset.size() == 2);
  CHECK(rep.hits_per_coset[0] > 0);
  CHECK(rep.hits_per_coset[1] > 0);
  CHECK(rep.points_checked == static_cast<std::size_t>(brute_force_cover({{1, 1}, {0, 2}}, p2.points, 0, 4)));

  CHECK_THROWS_AS(verify_disjoint_decomposition(p2, monoid({{1, 0}, {0, 1}}), {0, 4}), Error);
}

TEST_CASE("a damaged generator set is caught") {
  auto p = parallelepiped_points({{2, 0}, {0, 2}});
  p.points.pop_back();
  auto rep = verify_disjoint_decomposition(p, {0, 4});
  CHECK_FALSE(rep.ok());
  CHECK(brute_force_cover(p.spanning, p.points, 0, 4) == -1);

  auto q2 = parallelepiped_points({{2, 0}, {0, 2}});
  q2.points.push_back({2, 0});
  CHECK_FALSE(verify_disjoint_decomposition(q2, {0, 4}).ok());
}

TEST_CASE("random decompositions agree with brute force") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 30) {
    std::size_t n = uniform(rng, 1, 3);
    std::vector<IntVector> vs;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v(n);
      for (auto &x : v)
        x = uniform(rng, -4, 4);
      vs.push_back(v);
    }
    if (cofactor_det(ExactMatrix::from_columns(vs, n)) == 0)
      continue;
    ++done;
    auto p = parallelepiped_points(vs);
    auto rep = verify_disjoint_decomposition(p, {-4, 5});
    CHECK(rep.ok());
    CHECK(brute_force_cover(vs, p.points, -4, 5) == static_cast<long>(rep.points_checked));
    // Every saturation point is some lambda + m: the monoid shadow of the
    // integral closure statement.
    std::size_t total = 0;
    for (auto h : rep.hits_per_coset)
      total += h;
    CHECK(total == rep.points_checked);
  }
}

TEST_CASE("default box bound") {
  CHECK(default_box_bound({{2, 0}, {0, 3}}) == 24);
  CHECK(default_box_bound({{1, 0}, {0, 1}}) == 4);
}
