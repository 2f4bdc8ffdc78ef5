#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latticeem/rational.hpp"

namespace latticeem {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  IntMatrix transpose() const;

  /// Fraction-free (Bareiss) determinant; square matrices only.
  Integer determinant() const;
  std::size_t rank() const;

  // Elementary operations used by the Smith reduction.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// M = P * D * Q with P, Q unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
/// The inverses of P and Q are tracked alongside so that lattice coordinates
/// can be read off without a second elimination.
struct SmithForm {
  IntMatrix P;
  IntMatrix D;
  IntMatrix Q;
  IntMatrix P_inv;
  IntMatrix Q_inv;

  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& M);

/// Exact solution of A x = b for square nonsingular A. Throws Singular.
RationalVector solve_rational_system(const IntMatrix& A, std::span<const Rational> b);
RationalVector solve_rational_system(const std::vector<RationalVector>& A, std::span<const Rational> b);

/// Columns of the inverse of A, i.e. the dual basis to the rows of A.
std::vector<RationalVector> inverse_columns(const IntMatrix& A);

}  // namespace latticeem
