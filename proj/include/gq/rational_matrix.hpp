#pragma once

// Dense matrices over Q with exact Gaussian elimination.

#include "gq/graded_algebra.hpp"

#include <string>
#include <vector>

namespace gq {

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);

  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RMatrix transpose() const;
  RMatrix column(std::size_t c) const;
  RMatrix columns(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;
  bool operator==(const RMatrix& o) const;

  RMatrix& operator+=(const RMatrix& o);
  RMatrix& operator-=(const RMatrix& o);
  RMatrix& operator*=(const Rational& c);
  friend RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
  friend RMatrix operator-(RMatrix a, const RMatrix& b) { return a -= b; }
  friend RMatrix operator*(RMatrix a, const Rational& c) { return a *= c; }
  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Horizontal / vertical concatenation (row/column counts must agree unless
/// one side is empty).
RMatrix hstack(const RMatrix& a, const RMatrix& b);
RMatrix vstack(const RMatrix& a, const RMatrix& b);
RMatrix block_diag(const RMatrix& a, const RMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

/// Reduced row echelon form; pivot columns are written to `pivots`.
RMatrix rref(RMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RMatrix& m);

/// Basis of the kernel, as columns (rows() == m.cols()).
RMatrix nullspace(const RMatrix& m);
/// Basis of the column space drawn from m's own columns.
RMatrix column_basis(const RMatrix& m);
/// Columns of `extra` (in order) that extend span(base) to span(base, extra),
/// chosen greedily. Returns the selected columns.
RMatrix extend_basis(const RMatrix& base, const RMatrix& extra);
/// span(b) subset of span(a). Both are column sets with equal row counts.
bool span_contains(const RMatrix& a, const RMatrix& b);
bool same_span(const RMatrix& a, const RMatrix& b);
/// Solves a x = b exactly for one right-hand side column; nullopt if
/// inconsistent.
std::optional<RMatrix> solve(const RMatrix& a, const RMatrix& b);

}  // namespace gq
