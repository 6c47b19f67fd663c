#include "gradval/ordered_groups.hpp"

#include "gradval/error.hpp"

#include <sstream>

namespace gradval {

GroupShape::GroupShape(std::vector<BlockWeights> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto &b : blocks_) {
    if (b.radicand < 0)
      fail(ErrorCode::SchemaError, "block radicand must be positive");
    if (b.radicand != 0 && mpz_perfect_square_p(b.radicand.get_mpz_t()))
      fail(ErrorCode::SchemaError,
           "block radicand " + gradval::to_string(b.radicand) +
               " is a perfect square; weights would be dependent");
    offsets_.push_back(dimension_);
    dimension_ += b.width();
  }
}

ShapePtr GroupShape::make(std::vector<BlockWeights> blocks) {
  return std::make_shared<const GroupShape>(std::move(blocks));
}

ShapePtr GroupShape::rational(std::size_t rank) {
  return make(std::vector<BlockWeights>(rank));
}

bool same_shape(const ShapePtr &a, const ShapePtr &b) {
  if (a == b)
    return true;
  return a && b && *a == *b;
}

int quadratic_sign(const Rational &p, const Rational &q, const Int &d) {
  const int sp = sgn(p);
  const int sq = d == 0 ? 0 : sgn(q);
  if (sq == 0)
    return sp;
  if (sp == 0 || sp == sq)
    return sq;
  // Opposite signs: the larger of p^2 and d*q^2 wins; they never tie since
  // d is not a square.
  Rational lhs = p * p;
  Rational rhs = q * q * Rational(d);
  return lhs > rhs ? sp : sq;
}

OrderedGroupElement::OrderedGroupElement(ShapePtr shape, RationalVector coords)
    : shape_(std::move(shape)), coords_(std::move(coords)) {
  if (!shape_)
    fail(ErrorCode::AmbientMismatch, "element without ambient group");
  if (coords_.size() != shape_->dimension())
    fail(ErrorCode::DimensionMismatch,
         "element has " + std::to_string(coords_.size()) +
             " coordinates, ambient group needs " +
             std::to_string(shape_->dimension()));
}

OrderedGroupElement OrderedGroupElement::zero(ShapePtr shape) {
  const std::size_t dim = shape->dimension();
  return OrderedGroupElement(std::move(shape), RationalVector(dim));
}

OrderedGroupElement OrderedGroupElement::from_ints(ShapePtr shape,
                                                   std::initializer_list<long> coords) {
  RationalVector v;
  for (long c : coords)
    v.emplace_back(c);
  return OrderedGroupElement(std::move(shape), std::move(v));
}

RationalVector OrderedGroupElement::block(std::size_t i) const {
  const std::size_t off = shape_->offset(i);
  const std::size_t w = shape_->block(i).width();
  return RationalVector(coords_.begin() + static_cast<std::ptrdiff_t>(off),
                        coords_.begin() + static_cast<std::ptrdiff_t>(off + w));
}

bool OrderedGroupElement::is_zero() const {
  for (const auto &c : coords_)
    if (c != 0)
      return false;
  return true;
}

int OrderedGroupElement::block_sign(std::size_t i) const {
  const std::size_t off = shape_->offset(i);
  const auto &w = shape_->block(i);
  if (w.radicand == 0)
    return sgn(coords_[off]);
  return quadratic_sign(coords_[off], coords_[off + 1], w.radicand);
}

std::size_t OrderedGroupElement::leading_block() const {
  for (std::size_t i = 0; i < shape_->rank(); ++i)
    if (block_sign(i) != 0)
      return i;
  return shape_->rank();
}

int OrderedGroupElement::sign() const {
  std::size_t lead = leading_block();
  return lead == shape_->rank() ? 0 : block_sign(lead);
}

static void require_same(const OrderedGroupElement &a,
                         const OrderedGroupElement &b) {
  if (!same_shape(a.shape(), b.shape()))
    fail(ErrorCode::AmbientMismatch, "elements live in different groups");
}

OrderedGroupElement
OrderedGroupElement::operator+(const OrderedGroupElement &rhs) const {
  require_same(*this, rhs);
  RationalVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] += rhs.coords_[i];
  return OrderedGroupElement(shape_, std::move(c));
}

OrderedGroupElement
OrderedGroupElement::operator-(const OrderedGroupElement &rhs) const {
  require_same(*this, rhs);
  RationalVector c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] -= rhs.coords_[i];
  return OrderedGroupElement(shape_, std::move(c));
}

OrderedGroupElement OrderedGroupElement::operator-() const {
  RationalVector c = coords_;
  for (auto &x : c)
    x = -x;
  return OrderedGroupElement(shape_, std::move(c));
}

OrderedGroupElement OrderedGroupElement::scaled(const Rational &factor) const {
  RationalVector c = coords_;
  for (auto &x : c)
    x *= factor;
  return OrderedGroupElement(shape_, std::move(c));
}

bool OrderedGroupElement::operator==(const OrderedGroupElement &rhs) const {
  require_same(*this, rhs);
  return coords_ == rhs.coords_;
}

std::string OrderedGroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t b = 0; b < shape_->rank(); ++b) {
    if (b)
      os << "; ";
    const std::size_t off = shape_->offset(b);
    os << gradval::to_string(coords_[off]);
    if (shape_->block(b).radicand != 0)
      os << " + " << gradval::to_string(coords_[off + 1]) << "*sqrt("
         << gradval::to_string(shape_->block(b).radicand) << ")";
  }
  os << ')';
  return os.str();
}

std::strong_ordering lex_compare(const OrderedGroupElement &a,
                                 const OrderedGroupElement &b) {
  const int s = (a - b).sign();
  if (s < 0)
    return std::strong_ordering::less;
  if (s > 0)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool IsolatedChain::contains(std::size_t level,
                             const OrderedGroupElement &g) const {
  if (!same_shape(shape_, g.shape()))
    fail(ErrorCode::AmbientMismatch, "element outside the chain's group");
  if (level > length())
    fail(ErrorCode::IndexError, "isolated level out of range");
  return g.leading_block() >= level;
}

std::size_t isolated_level(const OrderedGroupElement &g,
                           const IsolatedChain &chain) {
  if (!same_shape(chain.shape(), g.shape()))
    fail(ErrorCode::AmbientMismatch, "element outside the chain's group");
  return g.leading_block();
}

std::vector<std::size_t> ValueGroup::block_ranks() const {
  std::vector<std::size_t> out;
  for (const auto &b : shape->blocks())
    out.push_back(b.width());
  return out;
}

ValueGroup make_value_group(ShapePtr shape,
                            std::vector<OrderedGroupElement> generators) {
  for (const auto &g : generators)
    if (!same_shape(shape, g.shape()))
      fail(ErrorCode::AmbientMismatch, "generator outside the ambient group");
  return ValueGroup{std::move(shape), std::move(generators)};
}

namespace {

Int common_scale(const std::vector<const ValueGroup *> &groups) {
  Int l = 1;
  for (const auto *g : groups)
    for (const auto &e : g->generators)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              lcm_of_denominators(e.coords()).get_mpz_t());
  return l;
}

ExactMatrix scaled_columns(const ValueGroup &g, const Int &scale) {
  const std::size_t m = g.shape->dimension();
  ExactMatrix M(m, g.generators.size());
  for (std::size_t j = 0; j < g.generators.size(); ++j)
    for (std::size_t r = 0; r < m; ++r) {
      Rational v = g.generators[j].coords()[r] * Rational(scale);
      M(r, j) = v.get_num();
    }
  return M;
}

} // namespace

QuotientMap::QuotientMap(const ValueGroup &big, const ValueGroup &small)
    : shape_(big.shape) {
  if (!same_shape(big.shape, small.shape))
    fail(ErrorCode::AmbientMismatch, "groups live in different ambients");
  scale_ = common_scale({&big, &small});
  big_basis_ = hermite_basis(scaled_columns(big, scale_));
  const std::size_t rho = big_basis_.rank();

  ExactMatrix C(rho, small.generators.size());
  for (std::size_t j = 0; j < small.generators.size(); ++j) {
    IntVector v = scaled(small.generators[j]);
    auto coords = big_basis_.coordinates(v);
    if (!coords)
      fail(ErrorCode::NotASubgroup,
           "generator " + small.generators[j].to_string() +
               " is outside the span of the larger group");
    for (std::size_t i = 0; i < rho; ++i) {
      if ((*coords)[i].get_den() != 1)
        fail(ErrorCode::NotASubgroup,
             "generator " + small.generators[j].to_string() +
                 " is not in the larger group");
      C(i, j) = (*coords)[i].get_num();
    }
  }
  small_in_big_ = hermite_basis(C);
  if (small_in_big_.rank() != rho)
    fail(ErrorCode::InfiniteIndex,
         "subgroup has rank " + std::to_string(small_in_big_.rank()) +
             " but the group has rank " + std::to_string(rho));
  snf_ = smith_normal_form(C);
  first_nontrivial_ = rho;
  for (std::size_t i = 0; i < rho; ++i) {
    const Int &d = snf_.D(i, i);
    index_ *= d;
    if (d > 1) {
      if (first_nontrivial_ == rho)
        first_nontrivial_ = i;
      moduli_.push_back(d);
    }
  }
}

IntVector QuotientMap::scaled(const OrderedGroupElement &g) const {
  if (!same_shape(shape_, g.shape()))
    fail(ErrorCode::AmbientMismatch, "element outside the ambient group");
  IntVector out(g.coords().size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    Rational v = g.coords()[r] * Rational(scale_);
    if (v.get_den() != 1)
      fail(ErrorCode::NotInGroup, "element " + g.to_string() +
                                      " is not in the group");
    out[r] = v.get_num();
  }
  return out;
}

IntVector QuotientMap::big_coordinates(const OrderedGroupElement &g) const {
  auto coords = big_basis_.coordinates(scaled(g));
  if (!coords)
    fail(ErrorCode::NotInGroup, "element " + g.to_string() +
                                    " is outside the group's span");
  IntVector out;
  for (const auto &c : *coords) {
    if (c.get_den() != 1)
      fail(ErrorCode::NotInGroup,
           "element " + g.to_string() + " is not in the group");
    out.push_back(c.get_num());
  }
  return out;
}

bool QuotientMap::in_big(const OrderedGroupElement &g) const {
  try {
    big_coordinates(g);
    return true;
  } catch (const Error &e) {
    if (e.code() == ErrorCode::NotInGroup)
      return false;
    throw;
  }
}

bool QuotientMap::in_small(const OrderedGroupElement &g) const {
  return in_big(g) && label(g).is_trivial();
}

CosetLabel QuotientMap::label(const OrderedGroupElement &g) const {
  IntVector c = big_coordinates(g);
  CosetLabel out;
  out.moduli = moduli_;
  IntVector uc = snf_.U * c;
  for (std::size_t i = first_nontrivial_; i < uc.size(); ++i)
    out.residues.push_back(floor_mod(uc[i], snf_.D(i, i)));

  IntVector reduced = small_in_big_.reduce(c);
  RationalVector coords(shape_->dimension());
  for (std::size_t j = 0; j < reduced.size(); ++j)
    for (std::size_t r = 0; r < coords.size(); ++r)
      coords[r] += Rational(reduced[j] * big_basis_.H(r, j), scale_);
  out.representative = OrderedGroupElement(shape_, std::move(coords));
  return out;
}

OrderedGroupElement QuotientMap::element_for(const IntVector &residues) const {
  const std::size_t rho = big_basis_.rank();
  if (residues.size() != moduli_.size())
    fail(ErrorCode::DimensionMismatch, "residue vector has wrong length");
  IntVector r(rho, Int(0));
  for (std::size_t i = 0; i < residues.size(); ++i)
    r[first_nontrivial_ + i] = residues[i];
  // U is unimodular, so adj(U) = ±U^{-1}.
  ExactMatrix Uinv = adjugate(snf_.U);
  if (determinant(snf_.U) < 0)
    for (std::size_t i = 0; i < rho; ++i)
      Uinv.negate_row(i);
  IntVector c = Uinv * r;
  RationalVector coords(shape_->dimension());
  for (std::size_t j = 0; j < rho; ++j)
    for (std::size_t k = 0; k < coords.size(); ++k)
      coords[k] += Rational(c[j] * big_basis_.H(k, j), scale_);
  return OrderedGroupElement(shape_, std::move(coords));
}

bool CosetLabel::is_trivial() const {
  for (const auto &r : residues)
    if (r != 0)
      return false;
  return true;
}

Int subgroup_index(const ValueGroup &big, const ValueGroup &small) {
  return QuotientMap(big, small).index();
}

CosetLabel coset_label(const OrderedGroupElement &g, const ValueGroup &small,
                       const ValueGroup &big) {
  return QuotientMap(big, small).label(g);
}

bool same_group(const ValueGroup &a, const ValueGroup &b) {
  if (!same_shape(a.shape, b.shape))
    fail(ErrorCode::AmbientMismatch, "groups live in different ambients");
  Int scale = common_scale({&a, &b});
  auto ha = hermite_basis(scaled_columns(a, scale));
  auto hb = hermite_basis(scaled_columns(b, scale));
  if (ha.pivots != hb.pivots)
    return false;
  for (std::size_t j = 0; j < ha.rank(); ++j)
    if (ha.basis_vector(j) != hb.basis_vector(j))
      return false;
  return true;
}

std::size_t rational_rank(const std::vector<OrderedGroupElement> &elements) {
  if (elements.empty())
    return 0;
  ValueGroup g{elements.front().shape(), elements};
  Int scale = common_scale({&g});
  return rank_of(scaled_columns(g, scale));
}

} // namespace gradval
