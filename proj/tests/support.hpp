#pragma once

// Shared generators and independent reference computations for the tests.

#include "gradval/exact_lattice.hpp"
#include "gradval/ordered_groups.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace testing_support {

using gradval::ExactMatrix;
using gradval::Int;
using gradval::IntVector;
using gradval::Rational;
using gradval::abs_value;

inline long uniform(std::mt19937_64 &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline ExactMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols,
                                 long bound) {
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = uniform(rng, -bound, bound);
  return m;
}

// Laplace expansion along the first row.
inline Int cofactor_det(const ExactMatrix &a) {
  const std::size_t n = a.rows();
  if (n == 0)
    return 1;
  if (n == 1)
    return a(0, 0);
  if (n == 2)
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Int total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0)
      continue;
    ExactMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c)
          minor(i - 1, k++) = a(i, j);
    Int term = a(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Int(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
                    std::vector<std::vector<std::size_t>> &out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1} with
// D_k the gcd of all k x k minors. Returns all min(rows, cols) diagonal
// entries, zeros included.
inline IntVector smith_diagonal_oracle(const ExactMatrix &a) {
  const std::size_t m = std::min(a.rows(), a.cols());
  IntVector out;
  Int prev = 1;
  bool dead = false;
  for (std::size_t k = 1; k <= m; ++k) {
    if (dead) {
      out.push_back(0);
      continue;
    }
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto &r : rs)
      for (const auto &c : cs) {
        Int d = cofactor_det(a.submatrix(r, c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) {
      dead = true;
      out.push_back(0);
      continue;
    }
    out.push_back(Int(g / prev));
    prev = g;
  }
  return out;
}

// Cofactor matrix transpose computed entry by entry.
inline ExactMatrix adjugate_oracle(const ExactMatrix &a) {
  const std::size_t n = a.rows();
  ExactMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j)
          rows.push_back(k);
        if (k != i)
          cols.push_back(k);
      }
      Int d = cofactor_det(a.submatrix(rows, cols));
      adj(i, j) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return adj;
}

inline gradval::OrderedGroupElement rational_element(const gradval::ShapePtr &shape,
                                                     std::vector<Rational> coords) {
  for (auto &c : coords)
    c.canonicalize();
  return gradval::OrderedGroupElement(shape, std::move(coords));
}

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Brute-force check of the parallelepiped decomposition on the box
// [lo, hi)^n using machine integers (callers keep entries small). A point w
// is in x + M iff adj(V)(w - x) is a nonnegative multiple of det V in every
// coordinate; w is in the saturation iff adj(V) w has the sign of det V.
// Returns the number of saturation points checked, or -1 when some
// saturation point is not hit exactly once or some other point is hit.
inline long brute_force_cover(const std::vector<IntVector> &spanning,
                              const std::vector<IntVector> &points, long lo, long hi) {
  const std::size_t n = spanning.size();
  ExactMatrix V = ExactMatrix::from_columns(spanning, n);
  const long det = cofactor_det(V).get_si();
  ExactMatrix adjm = adjugate_oracle(V);
  std::vector<std::vector<long>> adj(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      adj[i][j] = adjm(i, j).get_si();
  auto apply = [&](const std::vector<long> &v) {
    std::vector<long> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out[i] += adj[i][j] * v[j];
    return out;
  };
  std::vector<std::vector<long>> px;
  for (const auto &x : points) {
    std::vector<long> v(n);
    for (std::size_t k = 0; k < n; ++k)
      v[k] = x[k].get_si();
    px.push_back(apply(v));
  }
  long checked = 0;
  std::vector<long> w(n, lo);
  for (;;) {
    auto a = apply(w);
    bool saturated = true;
    for (long x : a)
      saturated = saturated && ((det > 0) ? x >= 0 : x <= 0);
    long hits = 0;
    for (const auto &c : px) {
      bool member = true;
      for (std::size_t i = 0; i < n && member; ++i) {
        long diff = a[i] - c[i];
        member = diff % det == 0 && diff / det >= 0;
      }
      hits += member ? 1 : 0;
    }
    if (saturated) {
      ++checked;
      if (hits != 1)
        return -1;
    } else if (hits != 0) {
      return -1;
    }
    std::size_t i = 0;
    while (i < n && w[i] == hi - 1) {
      w[i] = lo;
      ++i;
    }
    if (i == n)
      break;
    w[i] += 1;
  }
  return checked;
}

} // namespace testing_support
