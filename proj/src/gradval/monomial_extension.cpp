#include "gradval/monomial_extension.hpp"

#include "gradval/error.hpp"

namespace gradval {

BlockStructure::BlockStructure(std::vector<std::size_t> t,
                               std::vector<std::size_t> s)
    : t_(std::move(t)), s_(std::move(s)) {
  if (t_.empty())
    fail(ErrorCode::SchemaError, "block structure needs r >= 1");
  if (t_.size() != s_.size())
    fail(ErrorCode::SchemaError, "t and s must have the same length r");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (s_[i] < 1 || s_[i] > t_[i])
      fail(ErrorCode::SchemaError, "block " + std::to_string(i + 1) +
                                       " violates 1 <= s_i <= t_i");
    offsets_.push_back(n_);
    n_ += t_[i];
  }
}

std::size_t BlockStructure::block_of(std::size_t var) const {
  if (var >= n_)
    fail(ErrorCode::IndexError, "variable index out of range");
  std::size_t b = 0;
  while (b + 1 < t_.size() && offsets_[b + 1] <= var)
    ++b;
  return b;
}

bool BlockStructure::is_t_index(std::size_t var) const {
  std::size_t b = block_of(var);
  return var - offsets_[b] < s_[b];
}

std::size_t BlockStructure::flat_index(std::size_t block,
                                       std::size_t position) const {
  if (block >= t_.size() || position >= t_[block])
    fail(ErrorCode::IndexError, "block/position out of range");
  return offsets_[block] + position;
}

std::vector<std::size_t> BlockStructure::t_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < t_.size(); ++b)
    for (std::size_t j = 0; j < s_[b]; ++j)
      out.push_back(offsets_[b] + j);
  return out;
}

std::vector<std::size_t> BlockStructure::t_indices_of_block(std::size_t block) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s_.at(block); ++j)
    out.push_back(offsets_[block] + j);
  return out;
}

std::vector<std::size_t> BlockStructure::t_indices_after(std::size_t block) const {
  std::vector<std::size_t> out;
  for (std::size_t b = block + 1; b < t_.size(); ++b)
    for (std::size_t j = 0; j < s_[b]; ++j)
      out.push_back(offsets_[b] + j);
  return out;
}

bool MonomialExtension::operator==(const MonomialExtension &rhs) const {
  if (!(blocks == rhs.blocks) || !(A == rhs.A) ||
      unit_markers != rhs.unit_markers || !same_shape(shape, rhs.shape) ||
      y_values.size() != rhs.y_values.size())
    return false;
  for (std::size_t j = 0; j < y_values.size(); ++j)
    if (!(y_values[j] == rhs.y_values[j]))
      return false;
  return true;
}

MonomialExtension make_extension(BlockStructure blocks, ExactMatrix A,
                                 std::vector<OrderedGroupElement> y_values,
                                 std::vector<bool> unit_markers) {
  const std::size_t n = blocks.size();
  if (A.rows() != n || A.cols() != n)
    fail(ErrorCode::DimensionMismatch,
         "exponent matrix must be n x n with n = t_1 + ... + t_r");
  if (y_values.size() != n)
    fail(ErrorCode::DimensionMismatch, "need one y-value per variable");
  if (unit_markers.empty())
    unit_markers.assign(n, false);
  if (unit_markers.size() != n)
    fail(ErrorCode::DimensionMismatch, "need one unit marker per row");
  ShapePtr shape = y_values.front().shape();
  for (const auto &y : y_values)
    if (!same_shape(shape, y.shape()))
      fail(ErrorCode::AmbientMismatch, "y-values live in different groups");
  return MonomialExtension{std::move(blocks), std::move(A),
                           std::move(unit_markers), std::move(y_values),
                           std::move(shape)};
}

std::vector<Diagnostic> validate(const MonomialExtension &me) {
  std::vector<Diagnostic> out;
  const auto &bs = me.blocks;
  const std::size_t n = bs.size();
  auto where = [](std::size_t r, std::size_t c) {
    return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
  };

  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t row_block = bs.block_of(m);
    const bool row_t = bs.is_t_index(m);
    for (std::size_t j = 0; j < n; ++j) {
      const Int &a = me.A(m, j);
      if (a < 0)
        out.push_back({"NegativeExponent", m, j,
                       "exponent at " + where(m, j) + " is negative"});
      const std::size_t col_block = bs.block_of(j);
      const bool col_t = bs.is_t_index(j);
      bool allowed;
      if (!col_t) {
        allowed = (j == m) ? true : a == 0;
        if (j == m && a != 1)
          out.push_back({"NonTRowDiagonal", m, j,
                         "non-T row must carry exponent 1 on its own variable, "
                         "found " + to_string(a) + " at " + where(m, j)});
      } else if (col_block < row_block) {
        allowed = a == 0;
      } else if (col_block == row_block) {
        allowed = row_t || a == 0;
      } else {
        allowed = true;
      }
      if (!allowed)
        out.push_back({"ZeroPatternBreach", m, j,
                       "exponent " + to_string(a) + " at " + where(m, j) +
                           " is forbidden by the block shape"});
    }
  }

  for (std::size_t b = 0; b < bs.rank(); ++b) {
    auto idx = bs.t_indices_of_block(b);
    if (determinant(me.A.submatrix(idx, idx)) == 0)
      out.push_back({"SingularDiagonalBlock", idx.front(), idx.front(),
                     "diagonal block " + std::to_string(b + 1) +
                         " on its T-columns is singular"});
  }

  if (me.shape->rank() != bs.rank()) {
    out.push_back({"RankMismatch", std::nullopt, std::nullopt,
                   "value group has " + std::to_string(me.shape->rank()) +
                       " blocks but the extension has r = " +
                       std::to_string(bs.rank())});
    return out;
  }
  IsolatedChain chain(me.shape);
  for (std::size_t j = 0; j < n; ++j) {
    const auto &y = me.y_values[j];
    if (y.sign() <= 0) {
      out.push_back({"NonPositiveValue", std::nullopt, j,
                     "value of y_" + std::to_string(j + 1) + " = " +
                         y.to_string() + " is not positive"});
      continue;
    }
    if (isolated_level(y, chain) != bs.block_of(j))
      out.push_back({"MisplacedBlockValue", std::nullopt, j,
                     "value of y_" + std::to_string(j + 1) +
                         " has its leading block at level " +
                         std::to_string(isolated_level(y, chain) + 1) +
                         ", expected block " + std::to_string(bs.block_of(j) + 1)});
  }

  std::vector<OrderedGroupElement> tvals;
  for (std::size_t j : bs.t_indices())
    tvals.push_back(me.y_values[j]);
  const std::size_t trank = rational_rank(tvals);
  if (trank != tvals.size())
    out.push_back({"DependentTValues", std::nullopt, std::nullopt,
                   "values of the T-variables span rank " +
                       std::to_string(trank) + ", expected " +
                       std::to_string(tvals.size())});
  else
    for (std::size_t j = 0; j < n; ++j) {
      if (bs.is_t_index(j))
        continue;
      auto with = tvals;
      with.push_back(me.y_values[j]);
      if (rational_rank(with) != tvals.size())
        out.push_back({"ValueOutsideTSpan", std::nullopt, j,
                       "value of y_" + std::to_string(j + 1) +
                           " is not a rational combination of the T-values"});
    }
  return out;
}

bool is_ssm_form(const MonomialExtension &me) {
  const std::size_t n = me.size();
  for (std::size_t m = 0; m < n; ++m) {
    if (me.blocks.is_t_index(m))
      continue;
    if (me.unit_markers[m])
      return false;
    for (std::size_t j = 0; j < n; ++j)
      if (me.A(m, j) != (j == m ? 1 : 0))
        return false;
  }
  return true;
}

SSMForm::SSMForm(MonomialExtension me) : me_(std::move(me)) {
  auto diags = validate(me_);
  if (!diags.empty())
    fail(ErrorCode::InvalidExtension, "extension is invalid: " + diags.front().message);
  if (!is_ssm_form(me_))
    fail(ErrorCode::InvalidExtension,
         "extension is not in strong monomial form: some non-T row is not x_m = y_m");
}

std::vector<OrderedGroupElement> induced_x_values(const MonomialExtension &me) {
  std::vector<OrderedGroupElement> out;
  const std::size_t n = me.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto v = OrderedGroupElement::zero(me.shape);
    for (std::size_t j = 0; j < n; ++j)
      if (me.A(i, j) != 0)
        v = v + me.y_values[j].scaled(Rational(me.A(i, j)));
    if (v.sign() <= 0)
      fail(ErrorCode::NonPositiveValue,
           "value of x_" + std::to_string(i + 1) + " = " + v.to_string() +
               " is not positive");
    out.push_back(std::move(v));
  }
  return out;
}

AdjointRelations adjoint_relations(const MonomialExtension &me) {
  auto t = me.blocks.t_indices();
  ExactMatrix AT = me.A.submatrix(t, t);
  Int det = determinant(AT);
  if (det == 0)
    fail(ErrorCode::SingularBlock, "T x T exponent submatrix is singular");
  ExactMatrix B = adjugate(AT);
  if (det < 0)
    for (std::size_t i = 0; i < B.rows(); ++i)
      B.negate_row(i);
  return AdjointRelations{abs_value(det), std::move(B), std::move(t)};
}

} // namespace gradval
