#include "gradval/affine_monoids.hpp"

#include "gradval/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace gradval {

namespace {

Int dot(const RationalVector &phi, const IntVector &v, const Int &scale) {
  Rational acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    acc += phi[i] * Rational(v[i]);
  acc *= Rational(scale);
  return acc.get_num(); // scale clears every denominator of phi
}

bool is_zero(const IntVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Int &x) { return x == 0; });
}

ExactMatrix columns_of(const std::vector<IntVector> &vectors, std::size_t dim) {
  return ExactMatrix::from_columns(vectors, dim);
}

} // namespace

AffineMonoid::AffineMonoid(std::size_t dim, std::vector<IntVector> generators,
                           RationalVector positivity_functional)
    : dim_(dim), functional_(std::move(positivity_functional)) {
  if (functional_.size() != dim_)
    fail(ErrorCode::DimensionMismatch, "positivity functional has wrong length");
  for (auto &g : generators) {
    if (g.size() != dim_)
      fail(ErrorCode::DimensionMismatch, "generator has wrong dimension");
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end())
      generators_.push_back(std::move(g));
  }
  Int scale = lcm_of_denominators(functional_);
  for (const auto &phi : functional_)
    scaled_functional_.push_back(Rational(phi * Rational(scale)).get_num());
  RationalVector integral(scaled_functional_.begin(), scaled_functional_.end());
  for (const auto &g : generators_) {
    Int w = dot(integral, g, 1);
    if (w <= 0)
      fail(ErrorCode::NotPointed,
           "positivity functional is not strictly positive on every generator");
    weights_.push_back(w);
  }
}

AffineMonoid AffineMonoid::with_derived_functional(std::size_t dim,
                                                   std::vector<IntVector> generators) {
  // Independent generators: the dual functional taking value 1 on each.
  if (!generators.empty() && generators.size() <= dim) {
    ExactMatrix G = ExactMatrix::from_rows(generators);
    if (rank_of(G) == generators.size()) {
      RationalVector ones(generators.size(), Rational(1));
      if (auto phi = solve_rational(G, ones))
        return AffineMonoid(dim, std::move(generators), std::move(*phi));
    }
  }
  RationalVector ones(dim, Rational(1));
  bool positive = true;
  for (const auto &g : generators) {
    Int s = 0;
    for (const auto &x : g)
      s += x;
    if (s <= 0)
      positive = false;
  }
  if (!positive)
    fail(ErrorCode::NotPointed, "no positivity functional found for the monoid");
  return AffineMonoid(dim, std::move(generators), std::move(ones));
}

bool AffineMonoid::contains(const IntVector &v) const {
  if (v.size() != dim_)
    fail(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  RationalVector integral(scaled_functional_.begin(), scaled_functional_.end());
  Int target = dot(integral, v, 1);
  if (target < 0)
    return false;
  if (target == 0)
    return is_zero(v);

  std::set<std::pair<std::size_t, IntVector>> dead;
  // Depth-first search over coefficients; the functional bounds each one.
  auto search = [&](auto &&self, std::size_t i, const IntVector &rest,
                    const Int &weight) -> bool {
    if (weight == 0)
      return is_zero(rest);
    if (i == generators_.size())
      return false;
    if (dead.count({i, rest}))
      return false;
    const IntVector &g = generators_[i];
    IntVector r = rest;
    Int w = weight;
    for (;;) {
      if (self(self, i + 1, r, w))
        return true;
      if (w < weights_[i])
        break;
      for (std::size_t k = 0; k < dim_; ++k)
        r[k] -= g[k];
      w -= weights_[i];
    }
    dead.insert({i, rest});
    return false;
  };
  return search(search, 0, v, target);
}

bool AffineMonoid::cone_contains(const IntVector &v) const {
  if (v.size() != dim_)
    fail(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  if (is_zero(v))
    return true;
  const std::size_t k = generators_.size();
  RationalVector rhs(v.begin(), v.end());
  // Carathéodory: v is in the cone iff it is a nonnegative combination of
  // some linearly independent subset of the generators.
  for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
    std::vector<IntVector> subset;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1ul << i))
        subset.push_back(generators_[i]);
    if (subset.size() > dim_)
      continue;
    ExactMatrix S = columns_of(subset, dim_);
    if (rank_of(S) != subset.size())
      continue;
    auto x = solve_rational(S, rhs);
    if (x && std::all_of(x->begin(), x->end(),
                         [](const Rational &q) { return q >= 0; }))
      return true;
  }
  return false;
}

SaturationResult saturation_membership(const IntVector &v, const AffineMonoid &M,
                                       const Int &box_bound) {
  if (v.size() != M.dim())
    fail(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  if (box_bound < 1)
    fail(ErrorCode::BoundTooSmall, "multiplier bound must be positive");
  if (is_zero(v))
    return {true, 1};
  if (!M.cone_contains(v))
    return {false, 0};
  IntVector mv(v.size());
  for (Int m = 1; m <= box_bound; ++m) {
    for (std::size_t i = 0; i < v.size(); ++i)
      mv[i] = m * v[i];
    if (M.contains(mv))
      return {true, m};
  }
  fail(ErrorCode::BoundTooSmall,
       "vector lies in the real cone but no multiplier <= " +
           to_string(box_bound) + " lands in the monoid");
}

ParallelepipedBasis parallelepiped_points(const std::vector<IntVector> &vectors) {
  const std::size_t n = vectors.size();
  for (const auto &v : vectors)
    if (v.size() != n)
      fail(ErrorCode::DimensionMismatch,
           "parallelepiped needs n vectors in Z^n");
  ExactMatrix V = columns_of(vectors, n);
  Int det = determinant(V);
  if (det == 0)
    fail(ErrorCode::DependentGenerators,
         "spanning vectors are linearly dependent");
  const Int D = abs_value(det);
  ExactMatrix sadj = adjugate(V);
  if (det < 0)
    for (std::size_t i = 0; i < n; ++i)
      sadj.negate_row(i);

  // Bounding box of the parallelepiped, inclusive on both ends.
  IntVector lo(n, Int(0)), hi(n, Int(0));
  for (const auto &v : vectors)
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k] < 0)
        lo[k] += v[k];
      else
        hi[k] += v[k];
    }

  // Odometer over the box (last coordinate fastest), tracking
  // a = sadj * w incrementally. w is in the parallelepiped iff 0 <= a_i < D.
  ParallelepipedBasis out;
  out.index = D;
  out.spanning = vectors;
  IntVector w = lo;
  IntVector a = sadj * w;
  for (;;) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i)
      inside = a[i] >= 0 && a[i] < D;
    if (inside)
      out.points.push_back(w);

    std::size_t k = n;
    while (k > 0) {
      --k;
      if (w[k] < hi[k]) {
        w[k] += 1;
        for (std::size_t i = 0; i < n; ++i)
          a[i] += sadj(i, k);
        break;
      }
      Int span = hi[k] - lo[k];
      w[k] = lo[k];
      for (std::size_t i = 0; i < n; ++i)
        a[i] -= span * sadj(i, k);
      if (k == 0) {
        k = n + 1; // sentinel: odometer wrapped
        break;
      }
    }
    if (k == n + 1 || n == 0)
      break;
  }
  std::sort(out.points.begin(), out.points.end());
  if (out.points.size() != D)
    fail(ErrorCode::Inconsistent,
         "parallelepiped enumeration found " + std::to_string(out.points.size()) +
             " points but the index is " + to_string(D));
  return out;
}

DecompositionReport verify_disjoint_decomposition(const ParallelepipedBasis &lambda,
                                                  const LatticeBox &box) {
  const std::size_t n = lambda.spanning.size();
  ExactMatrix V = columns_of(lambda.spanning, n);
  Int det = determinant(V);
  if (det == 0)
    fail(ErrorCode::DependentGenerators,
         "spanning vectors are linearly dependent");
  const Int D = abs_value(det);
  ExactMatrix sadj = adjugate(V);
  if (det < 0)
    for (std::size_t i = 0; i < n; ++i)
      sadj.negate_row(i);

  // Λ points grouped by their coordinates modulo D; a saturation point w can
  // only lie in x + M when adj(V) (w - x) vanishes modulo D.
  std::map<IntVector, std::vector<std::pair<std::size_t, IntVector>>> by_residue;
  for (std::size_t j = 0; j < lambda.points.size(); ++j) {
    IntVector c = sadj * lambda.points[j];
    IntVector key = c;
    for (auto &x : key)
      x = floor_mod(x, D);
    by_residue[key].emplace_back(j, std::move(c));
  }

  DecompositionReport report;
  report.box = box;
  report.hits_per_coset.assign(lambda.points.size(), 0);
  if (box.upper <= box.lower || n == 0)
    return report;

  IntVector w(n, box.lower);
  IntVector a = sadj * w;
  IntVector key(n);
  const Int span = box.upper - box.lower - 1;
  for (;;) {
    bool saturated = std::all_of(a.begin(), a.end(),
                                 [](const Int &x) { return x >= 0; });
    if (saturated) {
      ++report.points_checked;
      for (std::size_t i = 0; i < n; ++i)
        key[i] = floor_mod(a[i], D);
      std::size_t hits = 0;
      if (auto it = by_residue.find(key); it != by_residue.end())
        for (const auto &[j, c] : it->second) {
          bool below = true;
          for (std::size_t i = 0; i < n && below; ++i)
            below = c[i] <= a[i];
          if (below) {
            ++hits;
            ++report.hits_per_coset[j];
          }
        }
      if (hits != 1)
        report.violations.push_back({w, hits});
    }

    std::size_t k = n;
    bool wrapped = false;
    while (k > 0) {
      --k;
      if (w[k] < box.upper - 1) {
        w[k] += 1;
        for (std::size_t i = 0; i < n; ++i)
          a[i] += sadj(i, k);
        break;
      }
      w[k] = box.lower;
      for (std::size_t i = 0; i < n; ++i)
        a[i] -= span * sadj(i, k);
      if (k == 0)
        wrapped = true;
    }
    if (wrapped)
      break;
  }
  return report;
}

DecompositionReport verify_disjoint_decomposition(const ParallelepipedBasis &lambda,
                                                  const AffineMonoid &M,
                                                  const LatticeBox &box) {
  auto sorted = [](std::vector<IntVector> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(M.generators()) != sorted(lambda.spanning))
    fail(ErrorCode::DimensionMismatch,
         "monoid is not generated by the parallelepiped's spanning vectors");
  return verify_disjoint_decomposition(lambda, box);
}

Int default_box_bound(const std::vector<IntVector> &vectors) {
  Int m = 0;
  for (const auto &v : vectors)
    for (const auto &x : v)
      m = std::max(m, abs_value(x));
  if (!vectors.empty() && vectors.size() == vectors.front().size()) {
    Int d = abs_value(determinant(columns_of(vectors, vectors.size())));
    m = std::max(m, d);
  }
  return 4 * std::max(m, Int(1));
}

} // namespace gradval
