#include "gradval/exact_lattice.hpp"

#include "gradval/error.hpp"

#include <algorithm>
#include <utility>

namespace gradval {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : r)
      data_.emplace_back(v);
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<IntVector> &rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      fail(ErrorCode::DimensionMismatch, "matrix rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<IntVector> &columns,
                                      std::size_t dimension) {
  ExactMatrix m(dimension, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != dimension)
      fail(ErrorCode::DimensionMismatch, "column has wrong dimension");
    for (std::size_t r = 0; r < dimension; ++r)
      m(r, c) = columns[c][r];
  }
  return m;
}

ExactMatrix ExactMatrix::diagonal(const IntVector &entries) {
  ExactMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    m(i, i) = entries[i];
  return m;
}

IntVector ExactMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector ExactMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    out[r] = (*this)(r, c);
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::submatrix(std::span<const std::size_t> row_idx,
                                   std::span<const std::size_t> col_idx) const {
  ExactMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c)
      s(r, c) = (*this)(row_idx[r], col_idx[c]);
  return s;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix &rhs) const {
  if (cols_ != rhs.rows_)
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ExactMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector ExactMatrix::operator*(std::span<const Int> v) const {
  if (v.size() != cols_)
    fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  IntVector out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      out[i] += (*this)(i, k) * v[k];
  return out;
}

Int ExactMatrix::max_abs_entry() const {
  Int best = 0;
  for (const auto &v : data_)
    best = std::max(best, abs_value(v));
  return best;
}

void ExactMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t c = 0; c < cols_; ++c)
    std::swap((*this)(a, c), (*this)(b, c));
}

void ExactMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t r = 0; r < rows_; ++r)
    std::swap((*this)(r, a), (*this)(r, b));
}

void ExactMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                   const Int &factor) {
  if (factor == 0)
    return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(dst, c) += factor * (*this)(src, c);
}

void ExactMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                   const Int &factor) {
  if (factor == 0)
    return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, dst) += factor * (*this)(r, src);
}

void ExactMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(r, c) = -(*this)(r, c);
}

void ExactMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, c) = -(*this)(r, c);
}

std::size_t SmithDecomposition::rank() const {
  std::size_t k = 0;
  while (k < D.rows() && k < D.cols() && D(k, k) != 0)
    ++k;
  return k;
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t k = 0; k < D.rows() && k < D.cols(); ++k)
    d.push_back(D(k, k));
  return d;
}

SmithDecomposition smith_normal_form(const ExactMatrix &A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  SmithDecomposition out{ExactMatrix::identity(m), A, ExactMatrix::identity(n)};
  ExactMatrix &U = out.U;
  ExactMatrix &D = out.D;
  ExactMatrix &V = out.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Minimal |entry| pivot, first in row-major scan order.
      std::size_t pr = m, pc = n;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0)
            continue;
          Int a = abs_value(D(i, j));
          if (pr == m || a < best) {
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (pr == m)
        return out; // remaining block is zero

      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0)
          continue;
        Int q = floor_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0)
          continue;
        Int q = floor_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // Divisibility: fold an offending row into row t and retry.
      std::size_t offender = m;
      for (std::size_t i = t + 1; i < m && offender == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            offender = i;
            break;
          }
      if (offender == m)
        break;
      D.add_row_multiple(t, offender, Int(1));
      U.add_row_multiple(t, offender, Int(1));
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

HermiteBasis hermite_basis(const ExactMatrix &G) {
  HermiteBasis out{G, {}};
  ExactMatrix &H = out.H;
  const std::size_t m = H.rows();
  const std::size_t k = H.cols();
  std::size_t col = 0;
  for (std::size_t row = 0; row < m && col < k; ++row) {
    for (;;) {
      std::size_t pc = k;
      Int best;
      for (std::size_t j = col; j < k; ++j) {
        if (H(row, j) == 0)
          continue;
        Int a = abs_value(H(row, j));
        if (pc == k || a < best) {
          best = a;
          pc = j;
        }
      }
      if (pc == k)
        break;
      H.swap_cols(col, pc);
      bool clean = true;
      for (std::size_t j = col + 1; j < k; ++j) {
        if (H(row, j) == 0)
          continue;
        Int q = floor_div(H(row, j), H(row, col));
        H.add_col_multiple(j, col, -q);
        if (H(row, j) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (H(row, col) == 0)
      continue; // no pivot in this row
    if (H(row, col) < 0)
      H.negate_col(col);
    for (std::size_t j = 0; j < col; ++j) {
      Int q = floor_div(H(row, j), H(row, col));
      H.add_col_multiple(j, col, -q);
    }
    out.pivots.push_back(row);
    ++col;
  }
  return out;
}

std::optional<RationalVector>
HermiteBasis::coordinates(std::span<const Int> v) const {
  if (v.size() != H.rows())
    fail(ErrorCode::DimensionMismatch, "vector length does not match lattice");
  RationalVector residual(v.begin(), v.end());
  RationalVector coords(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t p = pivots[j];
    coords[j] = residual[p] / Rational(H(p, j));
    if (coords[j] != 0)
      for (std::size_t r = 0; r < H.rows(); ++r)
        residual[r] -= coords[j] * H(r, j);
  }
  for (const auto &x : residual)
    if (x != 0)
      return std::nullopt;
  return coords;
}

IntVector HermiteBasis::reduce(std::span<const Int> v) const {
  IntVector out(v.begin(), v.end());
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t p = pivots[j];
    Int q = floor_div(out[p], H(p, j));
    if (q != 0)
      for (std::size_t r = 0; r < H.rows(); ++r)
        out[r] -= q * H(r, j);
  }
  return out;
}

Int determinant(const ExactMatrix &A) {
  if (!A.square())
    fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0)
    return 1;
  // Bareiss fraction-free elimination.
  ExactMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M(swap, k) == 0)
        ++swap;
      if (swap == n)
        return 0;
      M.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = t;
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  Int d = M(n - 1, n - 1);
  return sign < 0 ? Int(-d) : d;
}

ExactMatrix adjugate(const ExactMatrix &A) {
  if (!A.square())
    fail(ErrorCode::DimensionMismatch, "adjugate of non-square matrix");
  const std::size_t n = A.rows();
  ExactMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  std::vector<std::size_t> keep_r, keep_c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      keep_r.clear();
      keep_c.clear();
      for (std::size_t t = 0; t < n; ++t) {
        if (t != i)
          keep_r.push_back(t);
        if (t != j)
          keep_c.push_back(t);
      }
      Int minor = determinant(A.submatrix(keep_r, keep_c));
      // adj(j, i) is the (i, j) cofactor.
      adj(j, i) = ((i + j) % 2 == 0) ? minor : Int(-minor);
    }
  return adj;
}

std::size_t rank_of(const ExactMatrix &A) {
  return smith_normal_form(A).rank();
}

Int lattice_index(const ExactMatrix &A) {
  if (!A.square())
    fail(ErrorCode::DimensionMismatch, "lattice index needs a square matrix");
  Int d = determinant(A);
  if (d == 0)
    fail(ErrorCode::SingularLattice,
         "determinant is zero; the sublattice has infinite index");
  return abs_value(d);
}

IntVector quotient_invariants(const ExactMatrix &A) {
  if (!A.square())
    fail(ErrorCode::DimensionMismatch,
         "quotient invariants need a square matrix");
  auto snf = smith_normal_form(A);
  if (snf.rank() < A.rows())
    fail(ErrorCode::SingularLattice,
         "determinant is zero; the quotient is infinite");
  IntVector out;
  for (const auto &d : snf.diagonal())
    if (d > 1)
      out.push_back(d);
  return out;
}

std::optional<IntVector> solve_integer(const ExactMatrix &A,
                                       std::span<const Int> b) {
  if (b.size() != A.rows())
    fail(ErrorCode::DimensionMismatch, "right-hand side has wrong length");
  auto snf = smith_normal_form(A);
  IntVector ub = snf.U * b;
  const std::size_t r = snf.rank();
  IntVector y(A.cols(), Int(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < r) {
      if (ub[i] % snf.D(i, i) != 0)
        return std::nullopt;
      y[i] = ub[i] / snf.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

std::optional<RationalVector> solve_rational(const ExactMatrix &A,
                                             std::span<const Rational> b) {
  if (b.size() != A.rows())
    fail(ErrorCode::DimensionMismatch, "right-hand side has wrong length");
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  std::vector<RationalVector> M(m, RationalVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      M[i][j] = Rational(A(i, j));
    M[i][n] = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && M[p][col] == 0)
      ++p;
    if (p == m)
      continue;
    std::swap(M[row], M[p]);
    Rational inv = 1 / M[row][col];
    for (auto &x : M[row])
      x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || M[i][col] == 0)
        continue;
      Rational f = M[i][col];
      for (std::size_t j = col; j <= n; ++j)
        M[i][j] -= f * M[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (M[i][n] != 0)
      return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    x[pivot_cols[i]] = M[i][n];
  return x;
}

} // namespace gradval
