#pragma once

#include "gradval/exact_lattice.hpp"
#include "gradval/ordered_groups.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gradval {

/// Block sizes t_1..t_r and rational ranks s_1..s_r. Block i occupies the
/// variables offset(i) .. offset(i)+t_i-1; its first s_i variables are the
/// T-indices.
class BlockStructure {
public:
  BlockStructure() = default;
  BlockStructure(std::vector<std::size_t> t, std::vector<std::size_t> s);

  std::size_t rank() const noexcept { return t_.size(); }
  std::size_t size() const noexcept { return n_; }
  const std::vector<std::size_t> &t() const noexcept { return t_; }
  const std::vector<std::size_t> &s() const noexcept { return s_; }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }

  std::size_t block_of(std::size_t var) const;
  bool is_t_index(std::size_t var) const;
  // Position of var inside its block (0-based).
  std::size_t position(std::size_t var) const { return var - offset(block_of(var)); }
  std::size_t flat_index(std::size_t block, std::size_t position) const;

  std::vector<std::size_t> t_indices() const;
  std::vector<std::size_t> t_indices_of_block(std::size_t block) const;
  std::vector<std::size_t> t_indices_after(std::size_t block) const;

  bool operator==(const BlockStructure &) const = default;

private:
  std::vector<std::size_t> t_;
  std::vector<std::size_t> s_;
  std::vector<std::size_t> offsets_;
  std::size_t n_ = 0;
};

/// x_i = unit_i * prod_j y_j^{A(i,j)} together with the values nu*(y_j).
/// unit_markers[i] is true when x_i carries a formal unit factor (residue 1,
/// value 0).
struct MonomialExtension {
  BlockStructure blocks;
  ExactMatrix A;
  std::vector<bool> unit_markers;
  std::vector<OrderedGroupElement> y_values;
  ShapePtr shape;

  std::size_t size() const noexcept { return blocks.size(); }
  bool operator==(const MonomialExtension &rhs) const;
};

MonomialExtension make_extension(BlockStructure blocks, ExactMatrix A,
                                 std::vector<OrderedGroupElement> y_values,
                                 std::vector<bool> unit_markers = {});

struct Diagnostic {
  std::string code;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
  std::string message;
};

/// Every violated invariant of the triangular or strong monomial
/// shape; empty means valid.
std::vector<Diagnostic> validate(const MonomialExtension &me);

/// True when every non-T row is a bare unit row x_m = y_m.
bool is_ssm_form(const MonomialExtension &me);

/// A valid extension certified to be in strong monomial form.
class SSMForm {
public:
  /// Throws InvalidExtension when me is invalid or a non-T row is not a
  /// bare unit row.
  explicit SSMForm(MonomialExtension me);

  const MonomialExtension &extension() const noexcept { return me_; }

private:
  MonomialExtension me_;
};

/// nu(x_i) = sum_j A(i,j) nu*(y_j); throws NonPositiveValue if some value is
/// not strictly positive.
std::vector<OrderedGroupElement> induced_x_values(const MonomialExtension &me);

struct AdjointRelations {
  Int e;                           // |det A_T|
  ExactMatrix B;                   // A_T * B = B * A_T = e * I
  std::vector<std::size_t> t_rows; // row/column indices of A_T in A
};

AdjointRelations adjoint_relations(const MonomialExtension &me);

} // namespace gradval
