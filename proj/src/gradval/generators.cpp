#include "gradval/generators.hpp"

#include "gradval/error.hpp"

namespace gradval {

namespace {

long uniform(std::mt19937_64 &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

MonomialExtension build(std::mt19937_64 &rng, const GeneratorParams &params, bool with_h) {
  const long radicands[] = {2, 3, 5};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t r = static_cast<std::size_t>(
        uniform(rng, 1, static_cast<long>(std::min(params.max_rank, params.max_size))));
    std::vector<std::size_t> t, s;
    std::size_t budget = params.max_size;
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t reserve = r - i - 1;
      const std::size_t room = budget - reserve;
      std::size_t si = (room >= 2 && uniform(rng, 0, 2) == 0) ? 2 : 1;
      std::size_t ti = si + ((room > si && uniform(rng, 0, 1) == 1) ? 1 : 0);
      s.push_back(si);
      t.push_back(ti);
      budget -= ti;
    }
    BlockStructure bs(t, s);
    const std::size_t n = bs.size();

    std::vector<BlockWeights> weights;
    for (std::size_t i = 0; i < r; ++i)
      weights.push_back({s[i] == 2 ? Int(radicands[uniform(rng, 0, 2)]) : Int(0)});
    ShapePtr shape = GroupShape::make(weights);

    // T-values: positive leading component in their own block, arbitrary
    // integer tails in later blocks.
    std::vector<OrderedGroupElement> y(n);
    for (std::size_t i = 0; i < r; ++i) {
      auto idx = bs.t_indices_of_block(i);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        RationalVector c(shape->dimension(), Rational(0));
        const std::size_t off = shape->offset(i);
        if (s[i] == 1) {
          c[off] = Rational(uniform(rng, 1, 4), uniform(rng, 1, 2));
          c[off].canonicalize();
        } else if (a == 0) {
          c[off] = uniform(rng, 1, 3);
        } else {
          c[off] = uniform(rng, -1, 2);
          c[off + 1] = uniform(rng, 1, 2);
        }
        for (std::size_t k = off + shape->block(i).width(); k < c.size(); ++k)
          c[k] = uniform(rng, -2, 2);
        y[idx[a]] = OrderedGroupElement(shape, c);
      }
    }

    ExactMatrix A(n, n);
    bool singular = false;
    for (std::size_t i = 0; i < r && !singular; ++i) {
      auto idx = bs.t_indices_of_block(i);
      bool ok = false;
      for (int tries = 0; tries < 50 && !ok; ++tries) {
        for (std::size_t u : idx)
          for (std::size_t v : idx)
            A(u, v) = uniform(rng, 0, params.max_diag);
        ok = determinant(A.submatrix(idx, idx)) != 0;
      }
      singular = !ok;
      for (std::size_t u : idx)
        for (std::size_t l : bs.t_indices_after(i))
          A(u, l) = uniform(rng, 0, 2);
    }
    if (singular)
      continue;
    auto tidx = bs.t_indices();
    if (abs_value(determinant(A.submatrix(tidx, tidx))) > params.max_index)
      continue;

    std::vector<OrderedGroupElement> x(n);
    for (std::size_t w : tidx) {
      auto v = OrderedGroupElement::zero(shape);
      for (std::size_t l : tidx)
        if (A(w, l) != 0)
          v = v + y[l].scaled(Rational(A(w, l)));
      x[w] = v;
    }

    // Non-T rows: nu(x_m) is a nonnegative combination of T-values of x
    // led by the own block, and y_m absorbs the h part.
    for (std::size_t m = 0; m < n; ++m) {
      if (bs.is_t_index(m))
        continue;
      const std::size_t i = bs.block_of(m);
      A(m, m) = 1;
      auto target = OrderedGroupElement::zero(shape);
      auto own = bs.t_indices_of_block(i);
      for (std::size_t a = 0; a < own.size(); ++a) {
        long k = uniform(rng, a == 0 ? 1 : 0, 2);
        target = target + x[own[a]].scaled(Rational(k));
      }
      for (std::size_t w : bs.t_indices_after(i))
        target = target + x[w].scaled(Rational(uniform(rng, 0, 1)));
      auto ym = target;
      if (with_h)
        for (std::size_t l : bs.t_indices_after(i)) {
          A(m, l) = uniform(rng, 0, params.max_h);
          ym = ym - y[l].scaled(Rational(A(m, l)));
        }
      y[m] = ym;
    }

    auto me = make_extension(bs, A, y);
    if (validate(me).empty())
      return me;
  }
  fail(ErrorCode::Inconsistent, "random generator failed to produce a valid extension");
}

} // namespace

MonomialExtension random_triangular(std::mt19937_64 &rng, const GeneratorParams &params) {
  return build(rng, params, true);
}

MonomialExtension random_ssm(std::mt19937_64 &rng, const GeneratorParams &params) {
  return build(rng, params, false);
}

} // namespace gradval
