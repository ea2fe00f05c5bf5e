#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "poslp/error.hpp"
#include "poslp/instance.hpp"
#include "poslp/log.hpp"
#include "poslp/matrix_market.hpp"
#include "poslp/oracle.hpp"
#include "reference.hpp"

using namespace poslp;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

struct CaptureWarnings {
  std::vector<std::string> seen;
  WarningSink previous;
  CaptureWarnings()
      : previous(set_warning_sink([this](std::string_view m) { seen.emplace_back(m); })) {}
  ~CaptureWarnings() { set_warning_sink(std::move(previous)); }
};

const char* kHeader = "%%MatrixMarket matrix coordinate real general\n";

}  // namespace

TEST_CASE("normalize a single entry") {
  const auto inst = normalize(SparseNonnegMatrix(1, 1, {{0, 0, 2.0}}));
  CHECK(inst.column_scale == 2.0);
  CHECK(inst.matrix.entries()[0].value == 1.0);
}

TEST_CASE("normalize divides by the smallest column max") {
  // column maxes are 2 and 2
  const auto inst = normalize(SparseNonnegMatrix(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}}));
  CHECK(inst.column_scale == 2.0);
  const auto d = ref::to_dense(inst.matrix);
  CHECK(d[0][0] == 0.5L);
  CHECK(d[0][1] == 1.0L);
  CHECK(d[1][0] == 1.0L);
  CHECK(d[1][1] == 0.5L);

  // column maxes 4 and 3: global scalar 3, not per column
  const auto mixed = normalize(SparseNonnegMatrix(2, 2, {{0, 0, 4}, {1, 1, 3}}));
  CHECK(mixed.column_scale == 3.0);
  CHECK(mixed.matrix.column_max(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(mixed.matrix.column_max(1) == 1.0);
}

TEST_CASE("normalize rejects zero columns and warns on zero rows") {
  CHECK(kind_of([] { normalize(SparseNonnegMatrix(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}})); }) ==
        ErrorKind::ZeroColumn);
  CaptureWarnings w;
  normalize(SparseNonnegMatrix(2, 1, {{0, 0, 1.0}}));
  REQUIRE(w.seen.size() == 1);
  CHECK(w.seen[0].find("row") != std::string::npos);
}

TEST_CASE("normalized instances hit the unit min column norm") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto raw = ref::random_matrix(3 + trial % 9, 2 + trial % 6, 0.5, rng);
    const auto inst = normalize(raw.divided_by(0.037 * (trial + 1)));
    double lo = INFINITY;
    for (double c : inst.matrix.column_maxes()) lo = std::min(lo, c);
    CHECK(std::fabs(lo - 1.0) <= 1e-12);
  }
}

TEST_CASE("unscaling maps normalized products onto raw products") {
  CHECK(unscale_packing_solution(std::vector<double>{1.0}, 2.0) == std::vector<double>{0.5});
  CHECK(unscale_packing_solution(std::vector<double>{0.0, 0.0}, 7.0) ==
        std::vector<double>{0.0, 0.0});

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto raw = ref::random_matrix(6, 5, 0.5, rng).divided_by(0.3);
    const auto inst = normalize(raw);
    std::vector<double> x(5);
    for (auto& v : x) v = u(rng);
    const auto xr = unscale_packing_solution(x, inst.column_scale);
    std::vector<double> a(6), b(6);
    raw.multiply(xr, a);
    inst.matrix.multiply(x, b);
    for (std::size_t j = 0; j < 6; ++j) CHECK(std::fabs(a[j] - b[j]) <= 1e-12 * std::max(1.0, std::fabs(b[j])));
  }
}

TEST_CASE("oracle solutions round-trip through normalization") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto raw = ref::random_matrix(5, 4, 0.6, rng).divided_by(0.2 + trial);
    const auto inst = normalize(raw);
    const PackingInstance unnormalized{raw, 1.0};
    const auto a = simplex_packing(inst);
    const auto b = simplex_packing(unnormalized);
    const auto xa = unscale_packing_solution(a.x_opt, inst.column_scale);
    CHECK(std::fabs(a.opt_value / inst.column_scale - b.opt_value) <= 1e-10 * std::max(1.0, b.opt_value));
    const auto f = check_feasible(xa, raw, Sense::Pack, 1e-10);
    CHECK(f.feasible);
  }
}

TEST_CASE("dualize transposes and renormalizes") {
  // constraints [[1,2],[2,1]]: transposed matrix is the same, scale 2
  const auto cov = make_covering(SparseNonnegMatrix(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 1}}));
  const auto pack = dualize(cov);
  const auto d = ref::to_dense(pack.matrix);
  CHECK(d[0][1] == 1.0L);
  CHECK(d[0][0] == 0.5L);
  CHECK(pack.column_scale == 2.0);

  // non-symmetric: [[1,4],[0,2]] as constraints -> packing A = C^T
  const SparseNonnegMatrix c(2, 2, {{0, 0, 1}, {0, 1, 4}, {1, 1, 2}});
  const auto p2 = dualize(make_covering(c));
  const auto d2 = ref::to_dense(p2.matrix);
  // C row maxes 4, 2 -> C/2 = [[.5,2],[0,1]]; A = [[.5,0],[2,1]], col maxes 2, 1
  CHECK(d2[0][0] == 0.5L);
  CHECK(d2[1][0] == 2.0L);
  CHECK(d2[1][1] == 1.0L);
  CHECK(d2[0][1] == 0.0L);
  CHECK(p2.column_scale == 2.0);

  const auto one = dualize(make_covering(SparseNonnegMatrix(1, 1, {{0, 0, 1.0}})));
  CHECK(one.matrix == SparseNonnegMatrix(1, 1, {{0, 0, 1.0}}));
  CHECK(one.column_scale == 1.0);
}

TEST_CASE("dualizing a symmetric matrix twice returns the normalized matrix") {
  const SparseNonnegMatrix s(3, 3, {{0, 0, 3}, {0, 2, 1}, {2, 0, 1}, {1, 1, 2}, {2, 2, 0.5}});
  const auto first = dualize(make_covering(s));
  const auto second = dualize(make_covering(first.matrix));
  CHECK(second.matrix == first.matrix);
  CHECK(second.matrix == normalize(s).matrix);
}

TEST_CASE("covering constraints must be nonempty") {
  CHECK(kind_of([] { make_covering(SparseNonnegMatrix(2, 1, {{0, 0, 1.0}})); }) ==
        ErrorKind::ZeroColumn);
}

TEST_CASE("generator is deterministic and hits the requested density") {
  CHECK(generate_random(12, 9, 0.3, 4) == generate_random(12, 9, 0.3, 4));
  CHECK(!(generate_random(12, 9, 0.3, 4) == generate_random(12, 9, 0.3, 5)));
  const auto full = generate_random(6, 4, 1.0, 1);
  CHECK(full.nnz() == 24);
  CHECK(full.rows() == 4);
  CHECK(full.cols() == 6);
  for (const auto& e : full.entries()) CHECK((e.value > 0.0 && e.value <= 1.0));

  double sum = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    sum += static_cast<double>(generate_random(100, 100, 0.3, seed).nnz()) / 1e4;
  CHECK(std::fabs(sum / 20 - 0.3) <= 0.05 * 0.3);

  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(generate_random(30, 5, 0.05, seed).empty_cols().empty());
}

TEST_CASE("matrix market parsing") {
  const auto m = parse_matrix_market(std::string(kHeader) + "2 2 2\n1 1 1.0\n2 2 1.0\n");
  CHECK(m == SparseNonnegMatrix(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}}));

  const auto sci = parse_matrix_market(std::string(kHeader) +
                                       "% comment\n\n3 1 2\n1 1 2.5e-3\n3 1 7\n");
  CHECK(sci.entries()[0].value == 2.5e-3);
  CHECK(sci.entries()[1].row == 2);

  const auto zero = parse_matrix_market(std::string(kHeader) + "1 2 2\n1 1 0\n1 2 1\n");
  CHECK(zero.nnz() == 1);

  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "1 1 1\n1 1 -1.0\n"); }) ==
        ErrorKind::NegativeEntry);
  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "2 2 2\n1 1 1\n1 1 2\n"); }) ==
        ErrorKind::DuplicateEntry);
  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "2 2 1\n1 x 1\n"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "2 2 1\n3 1 1\n"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "2 2 2\n1 1 1\n"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\n1\n"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_matrix_market(std::string(kHeader) + "1 1 1\n1 1 nan\n"); }) ==
        ErrorKind::NonFinite);

  try {
    parse_matrix_market(std::string(kHeader) + "2 2 2\n1 1 1\n2 2 oops\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("matrix market writer format and round trip") {
  std::ostringstream os;
  write_matrix_market(os, SparseNonnegMatrix(2, 3, {{1, 2, 0.1}}));
  CHECK(os.str() == "%%MatrixMarket matrix coordinate real general\n2 3 1\n2 3 0.10000000000000001\n");

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto m = generate_random(1 + seed % 13, 1 + seed % 7, 0.4, seed);
    std::ostringstream out;
    write_matrix_market(out, m);
    CHECK(parse_matrix_market(out.str()) == m);
  }
}
