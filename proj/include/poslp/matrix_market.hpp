#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "poslp/sparse_matrix.hpp"

namespace poslp {

/// Reads a Matrix Market "coordinate real general" file (1-based indices).
/// Explicit zeros are dropped; negative values, duplicate coordinates and
/// malformed lines throw `Error`.
SparseNonnegMatrix parse_matrix_market(std::string_view text);
SparseNonnegMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes the header, the "m n nnz" size line and one "i j value" line per
/// entry in row-major order, values with 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseNonnegMatrix& matrix);
void write_matrix_market(const std::filesystem::path& path,
                         const SparseNonnegMatrix& matrix);

}  // namespace poslp
