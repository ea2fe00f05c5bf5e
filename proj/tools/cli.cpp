#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "poslp/covering.hpp"
#include "poslp/dbscd.hpp"
#include "poslp/error.hpp"
#include "poslp/instance.hpp"
#include "poslp/log.hpp"
#include "poslp/matrix_market.hpp"
#include "poslp/oracle.hpp"
#include "poslp/smoothing.hpp"

namespace poslp::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_solution(const std::string& path, const std::vector<double>& x) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
  for (double v : x) f << format_value(v) << '\n';
}

int report_error(std::ostream& out, std::string_view name,
                 const std::string& detail, int code) {
  json e;
  e["error"] = name;
  e["detail"] = detail;
  out << e.dump(2) << '\n';
  return code;
}

struct SolveArgs {
  std::string mode = "pack";
  std::string input;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool verify = false;
  bool strict = false;
  std::string output;
  std::string solution;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const auto raw = read_matrix_market(a.input);
  const std::size_t threads =
      a.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : a.threads;

  SolveOptions opts;
  opts.threads = threads;
  opts.strict = a.strict;
  opts.trace_stride = 0;
  opts.accumulate_penalties = a.mode == "cover";

  json r;
  r["mode"] = a.mode;
  r["epsilon"] = a.epsilon;
  r["seed"] = a.seed;
  r["n"] = raw.cols();
  r["m"] = raw.rows();
  r["nnz"] = raw.nnz();

  const bool oracle_fits = raw.rows() + raw.cols() <= kOracleSizeCap;
  std::vector<double> solution;
  if (a.mode == "pack") {
    derive_params(raw.cols(), raw.rows(), a.epsilon);  // validate before work
    const auto inst = normalize(raw);
    const auto rep = solve_packing(inst, a.epsilon, a.seed, opts);
    const auto feas = check_feasible(rep.x_final, raw, Sense::Pack, 1e-9);
    r["iterations"] = rep.stats.iterations;
    r["work"] = rep.stats.iterations * raw.nnz();
    r["objective"] = rep.objective;
    r["f_mu_final"] = rep.f_mu_final;
    r["feasible"] = feas.feasible;
    r["max_violation"] = feas.max_violation;
    if (a.verify && oracle_fits) {
      const double opt = simplex_packing(inst).opt_value / inst.column_scale;
      r["oracle_opt"] = opt;
      r["approx_ratio"] = rep.objective / opt;
    }
    solution = rep.x_final;
  } else {
    if (!(a.epsilon > 0.0 && a.epsilon <= 0.1)) {
      throw Error(ErrorKind::EpsilonOutOfRange,
                  "cover mode requires epsilon in (0, 1/10], got " +
                      format_value(a.epsilon));
    }
    const auto cov = make_covering(raw);
    const auto rep = solve_covering(cov, a.epsilon, a.seed, opts);
    const auto feas = check_feasible(rep.y_final, raw, Sense::Cover, 1e-12);
    r["iterations"] = rep.packing_report.stats.iterations;
    r["work"] = rep.packing_report.stats.iterations * raw.nnz();
    r["objective"] = rep.objective;
    r["feasible"] = feas.feasible;
    r["max_violation"] = feas.max_violation;
    r["num_fixed"] = rep.num_fixed;
    if (a.verify && oracle_fits) {
      const double opt = simplex_covering(cov).opt_value / cov.column_scale;
      r["oracle_opt"] = opt;
      r["approx_ratio"] = rep.objective / opt;
    }
    solution = rep.y_final;
  }

  if (!a.solution.empty()) write_solution(a.solution, solution);
  r["wall_time_ms"] = elapsed_ms(start);
  r["threads"] = threads;
  r["solution_path"] = a.solution.empty() ? json(nullptr) : json(a.solution);

  const std::string text = r.dump(2);
  out << text << '\n';
  if (!a.output.empty()) {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + a.output);
    f << text << '\n';
  }
  return kExitOk;
}

struct GenArgs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  write_matrix_market(a.output, generate_random(a.cols, a.rows, a.density, a.seed));
  return kExitOk;
}

struct BenchArgs {
  std::vector<double> epsilons;
  std::vector<std::size_t> sizes;
  std::uint64_t seeds = 1;
  double density = 0.3;
  std::uint64_t instance_seed = 1;
  std::size_t threads = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  out << "epsilon,n,m,nnz,T_formula,iterations_to_target,work,wall_time_ms,"
         "success,oracle\n";
  for (std::size_t size : a.sizes) {
    const auto inst = normalize(generate_random(size, size, a.density, a.instance_seed));
    std::optional<double> opt;
    if (inst.n() + inst.m() <= kOracleSizeCap) opt = simplex_packing(inst).opt_value;
    for (double eps : a.epsilons) {
      const auto params = derive_params(inst.n(), inst.m(), eps);
      for (std::uint64_t seed = 0; seed < a.seeds; ++seed) {
        out << shortest(eps) << ',' << inst.n() << ',' << inst.m() << ','
            << inst.matrix.nnz() << ',' << params.T << ',';
        if (!opt) {
          out << "NA,NA,NA,NA,size_limit\n";
          continue;
        }
        SolveOptions opts;
        opts.threads = a.threads;
        opts.trace_stride = 0;
        opts.accumulate_penalties = false;
        opts.stop_below = -(1.0 - 5.0 * eps) * *opt;
        const auto start = Clock::now();
        const auto rep = solve_packing(inst, eps, seed, opts);
        const double ms = elapsed_ms(start);
        const auto& hit = rep.stats.target_iteration;
        out << (hit ? std::to_string(*hit) : std::string("NA")) << ','
            << rep.stats.iterations * inst.matrix.nnz() << ',' << shortest(ms)
            << ',' << (hit ? "true" : "false") << ",ok\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Parallel approximation solver for positive (packing/covering) LPs"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve a packing or covering LP");
  s->add_option("--mode", solve.mode, "pack | cover")
      ->check(CLI::IsMember({"pack", "cover"}));
  s->add_option("--input", solve.input, "Matrix Market file")->required();
  s->add_option("--epsilon", solve.epsilon, "Approximation parameter")->required();
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--threads", solve.threads, "Worker threads (0 = all)");
  s->add_flag("--verify", solve.verify, "Compare against the exact oracle");
  s->add_flag("--strict", solve.strict, "Fail on monotonicity violations");
  s->add_option("--output", solve.output, "Also write the JSON report here");
  s->add_option("--solution", solve.solution, "Write the solution vector here");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--rows", gen.rows)->required()->check(CLI::PositiveNumber);
  g->add_option("--cols", gen.cols)->required()->check(CLI::PositiveNumber);
  g->add_option("--density", gen.density)->required();
  g->add_option("--seed", gen.seed);
  g->add_option("--output", gen.output)->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Iterations-to-target sweep, CSV output");
  b->add_option("--epsilons", bench.epsilons)->required()->delimiter(',');
  b->add_option("--sizes", bench.sizes)->required()->delimiter(',');
  b->add_option("--seeds", bench.seeds);
  b->add_option("--density", bench.density);
  b->add_option("--instance-seed", bench.instance_seed);
  b->add_option("--threads", bench.threads);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(out, "UsageError", e.what(), kExitInput);
  }

  auto previous = set_warning_sink([&err](std::string_view msg) {
    err << "warning: " << msg << '\n';
  });
  struct Restore {
    WarningSink sink;
    ~Restore() { set_warning_sink(std::move(sink)); }
  } restore{std::move(previous)};

  try {
    if (s->parsed()) return cmd_solve(solve, out);
    if (g->parsed()) return cmd_gen(gen);
    return cmd_bench(bench, out);
  } catch (const Error& e) {
    const bool numerical = e.kind() == ErrorKind::MonotonicityViolation ||
                           e.kind() == ErrorKind::NumericalOverflow;
    return report_error(out, e.name(), e.what(),
                        numerical ? kExitNumerical : kExitInput);
  }
}

}  // namespace poslp::cli
