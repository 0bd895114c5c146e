#pragma once

// Exact integer linear algebra: Smith normal form, lattice saturation and
// basis completion, and a few rank/determinant helpers.

#include "skeltrop/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace skeltrop {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Rows must all have the same length; `cols` is used only when `rows` is
  /// empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transposed() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct SmithDecomposition {
  IntMatrix left;      // U, rows x rows, unimodular
  IntMatrix diagonal;  // D = U * M * V
  IntMatrix right;     // V, cols x cols, unimodular

  /// Nonzero diagonal entries d_1 | d_2 | ... in order; length equals rank.
  IntVector elementary_divisors() const;
  std::size_t rank() const { return elementary_divisors().size(); }
};

/// Smith normal form with smallest-magnitude pivoting. Total on integer
/// matrices, including empty ones.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// True iff the rows of `vectors` are linearly independent and span a
/// saturated sublattice of Z^n (n = vectors.cols()), i.e. they extend to a
/// Z-basis. Throws std::invalid_argument when there are more rows than
/// columns.
bool extends_to_basis(const IntMatrix& vectors);

/// Same test on a list of vectors; throws std::invalid_argument on a
/// dimension mismatch.
bool extends_to_basis(const std::vector<IntVector>& vectors);

/// Returns an n x n matrix of determinant +-1 whose first k rows are the rows
/// of `vectors`. Throws std::invalid_argument when the rows do not extend.
IntMatrix complete_to_basis(const IntMatrix& vectors);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Rank over Q of a rational matrix given row by row.
std::size_t rational_rank(std::vector<RatVector> rows);

}  // namespace skeltrop
