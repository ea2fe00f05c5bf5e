#include "poslp/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "poslp/error.hpp"

namespace poslp {

namespace {

std::string coord(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")";
}

}  // namespace

SparseNonnegMatrix::SparseNonnegMatrix(std::size_t rows, std::size_t cols,
                                       std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
  if (rows > std::numeric_limits<Index>::max() ||
      cols > std::numeric_limits<Index>::max()) {
    throw Error(ErrorKind::SizeLimit, "matrix dimensions exceed index range");
  }
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  "entry " + coord(e.row, e.col) + " outside a " +
                      std::to_string(rows) + "x" + std::to_string(cols) +
                      " matrix");
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorKind::NonFinite,
                  "non-finite value at " + coord(e.row, e.col));
    }
    if (e.value < 0.0) {
      throw Error(ErrorKind::NegativeEntry,
                  "negative value at " + coord(e.row, e.col));
    }
    if (e.value == 0.0) {
      throw Error(ErrorKind::ExplicitZero,
                  "explicit zero at " + coord(e.row, e.col));
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row &&
        entries[k].col == entries[k - 1].col) {
      throw Error(ErrorKind::DuplicateEntry,
                  "duplicate entry at " + coord(entries[k].row, entries[k].col));
    }
  }

  const std::size_t n = entries.size();
  row_ptr_.assign(rows + 1, 0);
  col_ptr_.assign(cols + 1, 0);
  row_cols_.resize(n);
  row_values_.resize(n);
  col_rows_.resize(n);
  col_values_.resize(n);

  for (const auto& e : entries) {
    ++row_ptr_[e.row + 1];
    ++col_ptr_[e.col + 1];
  }
  for (std::size_t j = 0; j < rows; ++j) row_ptr_[j + 1] += row_ptr_[j];
  for (std::size_t i = 0; i < cols; ++i) col_ptr_[i + 1] += col_ptr_[i];

  // Entries are row-major sorted, so filling columns in this order leaves
  // each column's row indices ascending.
  std::vector<std::size_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& e = entries[k];
    row_cols_[k] = static_cast<Index>(e.col);
    row_values_[k] = e.value;
    const std::size_t slot = next[e.col]++;
    col_rows_[slot] = static_cast<Index>(e.row);
    col_values_[slot] = e.value;
  }
}

std::vector<Entry> SparseNonnegMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t j = 0; j < rows_; ++j) {
    const auto r = row(j);
    for (std::size_t k = 0; k < r.size(); ++k) {
      out.push_back({j, r.indices[k], r.values[k]});
    }
  }
  return out;
}

std::vector<Entry> SparseNonnegMatrix::entries_by_col() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < cols_; ++i) {
    const auto c = col(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      out.push_back({c.indices[k], i, c.values[k]});
    }
  }
  return out;
}

double SparseNonnegMatrix::column_max(std::size_t i) const noexcept {
  const auto c = col(i);
  double best = 0.0;
  for (double v : c.values) best = std::max(best, v);
  return best;
}

std::vector<double> SparseNonnegMatrix::column_maxes() const {
  std::vector<double> out(cols_);
  for (std::size_t i = 0; i < cols_; ++i) out[i] = column_max(i);
  return out;
}

std::size_t SparseNonnegMatrix::column_argmax(std::size_t i) const noexcept {
  const auto c = col(i);
  std::size_t best = 0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c.values[k] > c.values[best]) best = k;
  }
  return c.indices[best];
}

std::vector<std::size_t> SparseNonnegMatrix::empty_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < rows_; ++j) {
    if (row_ptr_[j] == row_ptr_[j + 1]) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> SparseNonnegMatrix::empty_cols() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cols_; ++i) {
    if (col_ptr_[i] == col_ptr_[i + 1]) out.push_back(i);
  }
  return out;
}

void SparseNonnegMatrix::multiply(std::span<const double> x,
                                  std::span<double> out) const {
  if (x.size() != cols_ || out.size() != rows_) {
    throw Error(ErrorKind::DimensionMismatch, "multiply: size mismatch");
  }
  for (std::size_t j = 0; j < rows_; ++j) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[j]; k < row_ptr_[j + 1]; ++k) {
      s += row_values_[k] * x[row_cols_[k]];
    }
    out[j] = s;
  }
}

void SparseNonnegMatrix::transpose_multiply(std::span<const double> y,
                                            std::span<double> out) const {
  if (y.size() != rows_ || out.size() != cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "transpose_multiply: size mismatch");
  }
  for (std::size_t i = 0; i < cols_; ++i) {
    double s = 0.0;
    for (std::size_t k = col_ptr_[i]; k < col_ptr_[i + 1]; ++k) {
      s += col_values_[k] * y[col_rows_[k]];
    }
    out[i] = s;
  }
}

SparseNonnegMatrix SparseNonnegMatrix::divided_by(double divisor) const {
  auto es = entries();
  for (auto& e : es) e.value /= divisor;
  return SparseNonnegMatrix(rows_, cols_, std::move(es));
}

SparseNonnegMatrix SparseNonnegMatrix::transposed() const {
  auto es = entries();
  for (auto& e : es) std::swap(e.row, e.col);
  return SparseNonnegMatrix(cols_, rows_, std::move(es));
}

}  // namespace poslp
