#include "poslp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "poslp/error.hpp"

namespace poslp {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

class Tokens {
 public:
  explicit Tokens(std::string_view line) : rest_(line) {}

  std::string_view next() {
    auto is_space = [](char c) {
      return c == ' ' || c == '\t' || c == '\r';
    };
    while (!rest_.empty() && is_space(rest_.front())) rest_.remove_prefix(1);
    std::size_t k = 0;
    while (k < rest_.size() && !is_space(rest_[k])) ++k;
    auto tok = rest_.substr(0, k);
    rest_.remove_prefix(k);
    return tok;
  }

 private:
  std::string_view rest_;
};

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

SparseNonnegMatrix parse_matrix_market(std::string_view text) {
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (text.empty()) return false;
    const auto nl = text.find('\n');
    line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) parse_error(1, "empty input");
  {
    Tokens t(line);
    const auto banner = t.next();
    const auto object = lower(t.next());
    const auto format = lower(t.next());
    const auto field = lower(t.next());
    const auto symmetry = lower(t.next());
    if (banner != "%%MatrixMarket") parse_error(line_no, "missing %%MatrixMarket banner");
    if (object != "matrix" || format != "coordinate") {
      parse_error(line_no, "only 'matrix coordinate' files are supported");
    }
    if (field != "real" && field != "integer" && field != "double") {
      parse_error(line_no, "unsupported field '" + field + "'");
    }
    if (symmetry != "general") {
      parse_error(line_no, "unsupported symmetry '" + symmetry + "'");
    }
  }

  // Size line, after comments and blank lines.
  std::size_t rows = 0, cols = 0, count = 0;
  for (;;) {
    if (!next_line(line)) parse_error(line_no, "missing size line");
    Tokens t(line);
    const auto first = t.next();
    if (first.empty() || first.front() == '%') continue;
    if (!parse_number(first, rows) || !parse_number(t.next(), cols) ||
        !parse_number(t.next(), count) || !t.next().empty()) {
      parse_error(line_no, "malformed size line, expected 'rows cols nnz'");
    }
    break;
  }

  std::vector<Entry> entries;
  entries.reserve(count);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t read = 0;
  while (next_line(line)) {
    Tokens t(line);
    const auto first = t.next();
    if (first.empty() || first.front() == '%') continue;
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (!parse_number(first, r) || !parse_number(t.next(), c) ||
        !parse_number(t.next(), v) || !t.next().empty()) {
      parse_error(line_no, "malformed entry, expected 'row col value'");
    }
    if (r < 1 || r > rows || c < 1 || c > cols) {
      parse_error(line_no, "index out of range");
    }
    if (++read > count) parse_error(line_no, "more entries than declared");
    if (!seen.emplace(r, c).second) {
      throw Error(ErrorKind::DuplicateEntry,
                  "duplicate entry (" + std::to_string(r) + ", " +
                      std::to_string(c) + ") on line " + std::to_string(line_no));
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFinite,
                  "non-finite value on line " + std::to_string(line_no));
    }
    if (v < 0.0) {
      throw Error(ErrorKind::NegativeEntry,
                  "negative entry (" + std::to_string(r) + ", " +
                      std::to_string(c) + ") on line " + std::to_string(line_no));
    }
    if (v == 0.0) continue;
    entries.push_back({r - 1, c - 1, v});
  }
  if (read != count) {
    parse_error(line_no, "expected " + std::to_string(count) +
                             " entries, found " + std::to_string(read));
  }
  return SparseNonnegMatrix(rows, cols, std::move(entries));
}

SparseNonnegMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_market(buf.str());
}

void write_matrix_market(std::ostream& out, const SparseNonnegMatrix& matrix) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nnz() << '\n';
  char buf[64];
  for (const auto& e : matrix.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << buf << '\n';
  }
}

void write_matrix_market(const std::filesystem::path& path,
                         const SparseNonnegMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_matrix_market(out, matrix);
}

}  // namespace poslp
