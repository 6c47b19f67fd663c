#pragma once

#include "gradval/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace gradval {

/// Dense integer matrix over arbitrary-precision integers.
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<IntVector> &rows);
  static ExactMatrix from_columns(const std::vector<IntVector> &columns,
                                  std::size_t dimension);
  static ExactMatrix diagonal(const IntVector &entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Int &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  ExactMatrix transpose() const;
  ExactMatrix submatrix(std::span<const std::size_t> row_idx,
                        std::span<const std::size_t> col_idx) const;

  ExactMatrix operator*(const ExactMatrix &rhs) const;
  IntVector operator*(std::span<const Int> v) const;
  bool operator==(const ExactMatrix &rhs) const = default;

  Int max_abs_entry() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int &factor);
  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int &factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// U * A * V = D with U, V unimodular and D in Smith normal form.
struct SmithDecomposition {
  ExactMatrix U;
  ExactMatrix D;
  ExactMatrix V;

  std::size_t rank() const;
  IntVector diagonal() const;
};

/// Column-style Hermite normal form: H = G * W for unimodular W. The first
/// `pivots.size()` columns of H are a canonical basis of the column lattice;
/// column j has zeros above row pivots[j], a positive entry there, and every
/// earlier column's entry in that row is reduced into [0, pivot).
struct HermiteBasis {
  ExactMatrix H;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
  IntVector basis_vector(std::size_t j) const { return H.column(j); }

  // Coordinates of v in the basis, or nullopt if v is outside the rational
  // span.
  std::optional<RationalVector> coordinates(std::span<const Int> v) const;
  // Canonical representative of v modulo the lattice; v must lie in the
  // rational span.
  IntVector reduce(std::span<const Int> v) const;
};

SmithDecomposition smith_normal_form(const ExactMatrix &A);
HermiteBasis hermite_basis(const ExactMatrix &G);

Int determinant(const ExactMatrix &A);
ExactMatrix adjugate(const ExactMatrix &A);
std::size_t rank_of(const ExactMatrix &A);

/// [Z^n : A Z^n] = |det A|; throws SingularLattice when det A = 0.
Int lattice_index(const ExactMatrix &A);

/// Invariant factors > 1 of Z^n / A Z^n.
IntVector quotient_invariants(const ExactMatrix &A);

/// Some integer x with A x = b, if one exists.
std::optional<IntVector> solve_integer(const ExactMatrix &A,
                                       std::span<const Int> b);

/// Some rational x with A x = b, if one exists.
std::optional<RationalVector> solve_rational(const ExactMatrix &A,
                                             std::span<const Rational> b);

} // namespace gradval
