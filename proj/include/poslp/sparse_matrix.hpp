#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace poslp {

using Index = std::uint32_t;

/// One stored coefficient of a sparse matrix.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Compressed slice of a matrix: the indices and values of one row (or one
/// column). Indices are sorted ascending.
struct SparseSlice {
  std::span<const Index> indices;
  std::span<const double> values;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Sparse matrix with strictly positive stored values, indexed both by row
/// (CSR) and by column (CSC). Both views are built eagerly and hold exactly
/// the same entries. Immutable after construction.
class SparseNonnegMatrix {
 public:
  SparseNonnegMatrix() = default;

  /// Builds both index views from an unordered triplet list. Throws
  /// `Error` on out-of-range indices, negative/zero/non-finite values and
  /// duplicate coordinates.
  SparseNonnegMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Entry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return row_values_.size(); }

  SparseSlice row(std::size_t j) const noexcept {
    const auto b = row_ptr_[j], e = row_ptr_[j + 1];
    return {std::span(row_cols_).subspan(b, e - b),
            std::span(row_values_).subspan(b, e - b)};
  }
  SparseSlice col(std::size_t i) const noexcept {
    const auto b = col_ptr_[i], e = col_ptr_[i + 1];
    return {std::span(col_rows_).subspan(b, e - b),
            std::span(col_values_).subspan(b, e - b)};
  }

  // Raw compressed arrays, for hot loops.
  std::span<const std::size_t> row_offsets() const noexcept { return row_ptr_; }
  std::span<const Index> row_indices() const noexcept { return row_cols_; }
  std::span<const double> row_values() const noexcept { return row_values_; }
  std::span<const std::size_t> col_offsets() const noexcept { return col_ptr_; }
  std::span<const Index> col_indices() const noexcept { return col_rows_; }
  std::span<const double> col_values() const noexcept { return col_values_; }

  /// Entries in row-major order (from the row view).
  std::vector<Entry> entries() const;
  /// Entries in column-major order (from the column view).
  std::vector<Entry> entries_by_col() const;

  /// Largest value in column i, 0 for an empty column.
  double column_max(std::size_t i) const noexcept;
  std::vector<double> column_maxes() const;
  /// Row index of the largest value in column i (lowest row on ties).
  /// Undefined for an empty column.
  std::size_t column_argmax(std::size_t i) const noexcept;

  std::vector<std::size_t> empty_rows() const;
  std::vector<std::size_t> empty_cols() const;

  /// out = A x, each output accumulated sequentially along its row.
  void multiply(std::span<const double> x, std::span<double> out) const;
  /// out = A^T y, each output accumulated sequentially along its column.
  void transpose_multiply(std::span<const double> y,
                          std::span<double> out) const;

  /// Copy with every value divided by `divisor`.
  SparseNonnegMatrix divided_by(double divisor) const;
  SparseNonnegMatrix transposed() const;

  friend bool operator==(const SparseNonnegMatrix& a,
                         const SparseNonnegMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.row_ptr_ == b.row_ptr_ && a.row_cols_ == b.row_cols_ &&
           a.row_values_ == b.row_values_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;

  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> row_cols_;
  std::vector<double> row_values_;

  std::vector<std::size_t> col_ptr_{0};
  std::vector<Index> col_rows_;
  std::vector<double> col_values_;
};

}  // namespace poslp
