#include "latticeem/int_matrix.hpp"

#include <utility>

#include "latticeem/error.hpp"

namespace latticeem {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
  std::vector<RationalVector> a(rows_, RationalVector(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a[i][j] = Rational((*this)(i, j));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows_ && a[pivot][col] == 0) ++pivot;
    if (pivot == rows_) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows_; ++i) {
      if (a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < cols_; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Keeps M = P * A * Q and P_inv = P^{-1}, Q_inv = Q^{-1} through every elementary step on A.
struct SmithState {
  IntMatrix A, P, P_inv, Q, Q_inv;

  void row_add(std::size_t i, std::size_t t, const Integer& c) {  // row_i += c row_t
    A.add_row_multiple(i, t, c);
    P.add_col_multiple(t, i, -c);
    P_inv.add_row_multiple(i, t, c);
  }
  void col_add(std::size_t j, std::size_t t, const Integer& c) {  // col_j += c col_t
    A.add_col_multiple(j, t, c);
    Q.add_row_multiple(t, j, -c);
    Q_inv.add_col_multiple(j, t, c);
  }
  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    P.swap_cols(a, b);
    P_inv.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    Q.swap_rows(a, b);
    Q_inv.swap_cols(a, b);
  }
  void row_negate(std::size_t i) {
    A.negate_row(i);
    P.negate_col(i);
    P_inv.negate_row(i);
  }
};

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  SmithState s{M, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
               IntMatrix::identity(n)};
  IntMatrix& A = s.A;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool exhausted = false;
    while (true) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (A(i, j) == 0) continue;
          if (pi == m || abs(A(i, j)) < abs(A(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) {
        exhausted = true;
        break;
      }
      s.row_swap(t, pi);
      s.col_swap(t, pj);

      bool remainder_left = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        s.row_add(i, t, -trunc_div(A(i, t), A(t, t)));
        if (A(i, t) != 0) remainder_left = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        s.col_add(j, t, -trunc_div(A(t, j), A(t, t)));
        if (A(t, j) != 0) remainder_left = true;
      }
      if (remainder_left) continue;

      // Row and column t are clear; enforce d_t | every remaining entry.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j) {
          if (A(i, j) % A(t, t) != 0) {
            s.row_add(t, i, 1);
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    if (exhausted) break;
    if (A(t, t) < 0) s.row_negate(t);
  }
  return SmithForm{std::move(s.P), std::move(s.A), std::move(s.Q), std::move(s.P_inv), std::move(s.Q_inv)};
}

RationalVector solve_rational_system(const std::vector<RationalVector>& A, std::span<const Rational> b) {
  const std::size_t n = A.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidArgument, "right-hand side has wrong length");
  std::vector<RationalVector> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw Error(ErrorCode::InvalidArgument, "system matrix is not square");
    a[i] = A[i];
    a[i].push_back(b[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::Singular, "system matrix is singular");
    std::swap(a[pivot], a[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

RationalVector solve_rational_system(const IntMatrix& A, std::span<const Rational> b) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::InvalidArgument, "system matrix is not square");
  std::vector<RationalVector> a(A.rows(), RationalVector(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) a[i][j] = Rational(A(i, j));
  return solve_rational_system(a, b);
}

std::vector<RationalVector> inverse_columns(const IntMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<RationalVector> cols;
  cols.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, Rational(0));
    e[i] = 1;
    cols.push_back(solve_rational_system(A, e));
  }
  return cols;
}

}  // namespace latticeem
