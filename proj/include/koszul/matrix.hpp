#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

struct Entry {
  std::size_t row;
  std::size_t col;
  mpq_class value;
};

/// Sparse exact matrix in compressed row form. Entries within a row are
/// sorted by column; no stored entry is zero.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpec field, std::size_t n);
  /// Dense integer rows, each of length `cols`.
  static Matrix from_rows(FieldSpec field, std::size_t cols,
                          const std::vector<std::vector<long long>>& rows);
  static Matrix from_dense(FieldSpec field, std::size_t cols,
                           const std::vector<std::vector<mpq_class>>& rows);

  FieldSpec field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return col_idx_.size(); }
  bool is_zero() const noexcept { return col_idx_.empty(); }

  std::span<const std::size_t> row_cols(std::size_t r) const {
    return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const mpq_class> row_values(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  mpq_class at(std::size_t r, std::size_t c) const;
  std::vector<Entry> entries() const;
  std::vector<std::vector<mpq_class>> to_dense() const;

  Matrix transpose() const;
  /// Matrix product this * rhs, i.e. the composite "apply rhs, then this".
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const mpq_class& s) const;
  /// Matrix-vector product for a dense column vector of length cols().
  std::vector<mpq_class> apply(const std::vector<mpq_class>& x) const;

  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  Matrix select_cols(const std::vector<std::size_t>& cols) const;
  /// Row r as a dense vector.
  std::vector<mpq_class> dense_row(std::size_t r) const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  std::string to_string() const;

 private:
  friend class MatrixBuilder;

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<mpq_class> values_;
};

/// Accumulates triplets; duplicate positions are summed, values are reduced
/// into the field and zeros dropped when build() is called.
class MatrixBuilder {
 public:
  MatrixBuilder(FieldSpec field, std::size_t rows, std::size_t cols);

  void add(std::size_t r, std::size_t c, const mpq_class& v);
  void add(std::size_t r, std::size_t c, long long v);
  /// Throws InputError if `v` lives in a different field.
  void add(std::size_t r, std::size_t c, const Scalar& v);

  FieldSpec field() const noexcept { return field_; }
  Matrix build();

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Entry> entries_;
};

/// Side-by-side concatenation; all blocks need the same row count.
Matrix hstack(const std::vector<Matrix>& blocks);
/// Top-to-bottom concatenation; all blocks need the same column count.
Matrix vstack(const std::vector<Matrix>& blocks);
/// Block-diagonal matrix.
Matrix block_diag(const std::vector<Matrix>& blocks);
/// Kronecker product with left-major index order: (i,j) -> i*dim2 + j.
Matrix kron(const Matrix& a, const Matrix& b);
/// Single-column matrix holding a dense vector.
Matrix column_matrix(FieldSpec field, const std::vector<mpq_class>& v);

}  // namespace koszul
