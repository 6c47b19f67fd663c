#include "gradval/value_semigroups.hpp"

#include "gradval/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gradval {

namespace {

bool lex_less(const OrderedGroupElement &a, const OrderedGroupElement &b) {
  return lex_compare(a, b) < 0;
}

// Generators grouped by leading block.
std::vector<std::vector<const OrderedGroupElement *>>
by_leading_block(const ValueSemigroup &S) {
  std::vector<std::vector<const OrderedGroupElement *>> out(S.shape()->rank());
  for (const auto &g : S.generators())
    out[g.leading_block()].push_back(&g);
  return out;
}

bool block_is_zero(const OrderedGroupElement &g, std::size_t k) {
  auto b = g.block(k);
  return std::all_of(b.begin(), b.end(), [](const Rational &q) { return q == 0; });
}

// Real value of block k compared with a rational bound: sign of (block - bound).
int compare_block(const OrderedGroupElement &g, std::size_t k, const Rational &bound) {
  auto b = g.block(k);
  const auto &w = g.shape()->block(k);
  if (w.radicand == 0)
    return sign_of(Rational(b[0] - bound));
  return quadratic_sign(b[0] - bound, b[1], w.radicand);
}

class MembershipSearch {
public:
  explicit MembershipSearch(const ValueSemigroup &S)
      : leaders_(by_leading_block(S)), rank_(S.shape()->rank()) {}

  bool run(const OrderedGroupElement &gamma) { return search(0, 0, gamma); }

private:
  bool search(std::size_t k, std::size_t idx, const OrderedGroupElement &rest) {
    if (k == rank_)
      return rest.is_zero();
    if (rest.block_sign(k) < 0)
      return false;
    const auto &gens = leaders_[k];
    if (gens.empty())
      return block_is_zero(rest, k) && search(k + 1, 0, rest);
    auto key = std::make_tuple(k, idx, rest.coords());
    if (dead_.count(key))
      return false;

    const OrderedGroupElement &g = *gens[idx];
    bool found = false;
    if (idx + 1 == gens.size()) {
      // The last leader must absorb block k exactly.
      auto r = rest.block(k), gb = g.block(k);
      std::size_t pivot = gb[0] != 0 ? 0 : 1;
      Rational c = r[pivot] / gb[pivot];
      if (c >= 0 && c.get_den() == 1) {
        auto next = rest - g.scaled(c);
        if (block_is_zero(next, k))
          found = search(k + 1, 0, next);
      }
    } else {
      OrderedGroupElement r = rest;
      for (;;) {
        if (search(k, idx + 1, r)) {
          found = true;
          break;
        }
        r = r - g;
        if (r.block_sign(k) < 0)
          break;
      }
    }
    if (!found)
      dead_.insert(std::move(key));
    return found;
  }

  std::vector<std::vector<const OrderedGroupElement *>> leaders_;
  std::size_t rank_;
  std::set<std::tuple<std::size_t, std::size_t, RationalVector>> dead_;
};

} // namespace

ValueSemigroup::ValueSemigroup(ShapePtr shape, std::vector<OrderedGroupElement> generators)
    : shape_(std::move(shape)) {
  for (auto &g : generators) {
    if (!same_shape(shape_, g.shape()))
      fail(ErrorCode::AmbientMismatch, "semigroup generator lives in another group");
    if (g.sign() <= 0)
      fail(ErrorCode::NonPositiveGenerator,
           "semigroup generator " + g.to_string() + " is not positive");
    generators_.push_back(std::move(g));
  }
  std::sort(generators_.begin(), generators_.end(), lex_less);
  generators_.erase(std::unique(generators_.begin(), generators_.end()),
                    generators_.end());
}

bool semigroup_membership(const OrderedGroupElement &gamma, const ValueSemigroup &S) {
  if (!same_shape(gamma.shape(), S.shape()))
    fail(ErrorCode::AmbientMismatch, "query lives in another group");
  if (gamma.sign() < 0)
    fail(ErrorCode::NegativeQuery, "query " + gamma.to_string() + " is negative");
  if (gamma.is_zero())
    return true;
  return MembershipSearch(S).run(gamma);
}

std::vector<OrderedGroupElement> semigroup_difference(const ValueSemigroup &small,
                                                      const ValueSemigroup &big,
                                                      const Rational &bound) {
  if (!same_shape(small.shape(), big.shape()))
    fail(ErrorCode::AmbientMismatch, "semigroups live in different groups");
  for (const auto &g : small.generators())
    if (!semigroup_membership(g, big))
      fail(ErrorCode::NotASubsemigroup,
           "generator " + g.to_string() + " of the smaller semigroup is not in the larger one");

  const auto leaders = by_leading_block(big);
  const std::size_t rank = big.shape()->rank();
  std::map<RationalVector, OrderedGroupElement> found;

  // Leaders of block k are the only generators touching block k once the
  // earlier coefficients are fixed, and each adds a positive amount there.
  auto enumerate = [&](auto &&self, std::size_t k, std::size_t idx,
                       const OrderedGroupElement &acc) -> void {
    if (k == rank) {
      found.emplace(acc.coords(), acc);
      return;
    }
    if (compare_block(acc, k, bound) > 0)
      return;
    if (idx == leaders[k].size()) {
      self(self, k + 1, 0, acc);
      return;
    }
    OrderedGroupElement cur = acc;
    while (compare_block(cur, k, bound) <= 0) {
      self(self, k, idx + 1, cur);
      cur = cur + *leaders[k][idx];
    }
  };
  enumerate(enumerate, 0, 0, OrderedGroupElement::zero(big.shape()));

  std::vector<OrderedGroupElement> out;
  MembershipSearch in_small(small);
  for (auto &[coords, g] : found)
    if (!g.is_zero() && !in_small.run(g))
      out.push_back(g);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

ValueSemigroup generating_sequence_semigroup(const std::vector<OrderedGroupElement> &values) {
  if (values.empty())
    fail(ErrorCode::SchemaError, "generating sequence is empty");
  for (const auto &v : values)
    if (v.sign() <= 0)
      fail(ErrorCode::NonPositiveGenerator, "value " + v.to_string() + " is not positive");
  for (std::size_t i = 2; i < values.size(); ++i) {
    auto c = lex_compare(values[i - 1], values[i]);
    if (c > 0 || (i >= 3 && c == 0))
      fail(ErrorCode::NonIncreasingTail,
           "value " + std::to_string(i + 1) + " (" + values[i].to_string() +
               ") breaks the increasing tail");
  }
  return ValueSemigroup(values.front().shape(), values);
}

} // namespace gradval
