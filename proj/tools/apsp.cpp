// Command-line front end: generate / solve / verify / bench / tune / report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "apsp/bench.hpp"
#include "apsp/error.hpp"
#include "apsp/fw_blocked.hpp"
#include "apsp/fw_core.hpp"
#include "apsp/graph_gen.hpp"
#include "apsp/matrix_io.hpp"
#include "apsp/oracle.hpp"

namespace {

// Exit codes: 0 success, 1 unexpected, 2 usage/plan, 3 I/O, 4 format,
// 5 verification failure.
constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitVerifyFailed = 5;

unsigned hardware_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

apsp::ElemType parse_dtype(const std::string& token) {
  if (token == "f32") return apsp::ElemType::F32;
  if (token == "f64") return apsp::ElemType::F64;
  throw apsp::DomainError("unknown dtype '" + token + "'");
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw apsp::IoError("cannot open for writing: " + out_path);
  out << text;
  if (!out) throw apsp::IoError("write failed: " + out_path);
}

struct GenerateArgs {
  std::size_t n = 0;
  double density = 0.5;
  std::uint32_t wmin = 1;
  std::uint32_t wmax = 100;
  std::uint64_t seed = 42;
  std::string dtype = "f32";
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  apsp::GraphGenSpec spec;
  spec.n = args.n;
  spec.density = args.density;
  spec.weight_min = args.wmin;
  spec.weight_max = args.wmax;
  spec.seed = args.seed;
  spec.elem_type = parse_dtype(args.dtype);
  const apsp::DistanceMatrix d = apsp::generate(spec);
  apsp::save(d, args.out);
  std::printf("generate n=%zu density=%g seed=%llu dtype=%s out=%s\n", args.n,
              args.density, static_cast<unsigned long long>(args.seed),
              apsp::to_string(spec.elem_type), args.out.c_str());
  return kExitOk;
}

struct SolveArgs {
  std::string in;
  std::string solver = "blocked";
  std::size_t tb = 64;
  unsigned threads = hardware_threads();
  bool pad = false;
  std::string out_dist;
  std::string out_pred;
};

int run_solve(const SolveArgs& args) {
  const apsp::DistanceMatrix original = apsp::load(args.in);
  const std::size_t n = original.size();

  apsp::DistanceMatrix distances;
  apsp::PredecessorMatrix predecessors;
  double time_s = 0.0;
  std::size_t tb_used = 0;

  if (args.solver == "naive") {
    apsp::NaiveResult result = args.threads <= 1
                                   ? apsp::fw_naive(original)
                                   : apsp::fw_naive_parallel(original, args.threads);
    distances = std::move(result.distances);
    predecessors = std::move(result.predecessors);
    time_s = result.wall_time_s;
  } else if (args.solver == "blocked") {
    apsp::DistanceMatrix input =
        args.pad ? apsp::pad_to_multiple(original, args.tb) : original;
    apsp::SolveResult result = apsp::fw_blocked(input, args.tb, args.threads);
    distances = apsp::truncated(result.distances, n);
    predecessors = apsp::truncated(result.predecessors, n);
    time_s = result.wall_time_s;
    tb_used = args.tb;
  } else {
    throw apsp::DomainError("unknown solver '" + args.solver + "'");
  }

  std::printf("solve n=%zu solver=%s tb=%zu threads=%u time_s=%.6f gflops=%.6f\n", n,
              args.solver.c_str(), tb_used, args.threads, time_s,
              apsp::gflops(n, time_s));
  if (!args.out_dist.empty()) apsp::save(distances, args.out_dist);
  if (!args.out_pred.empty()) apsp::save(predecessors, args.out_pred);
  return kExitOk;
}

struct VerifyArgs {
  std::string in;
  std::string dist;
  std::string pred;
  std::size_t samples = 10000;
  std::uint64_t seed = 0x5eed;
  std::string format = "text";
};

int run_verify(const VerifyArgs& args) {
  const apsp::DistanceMatrix input = apsp::load(args.in);
  const apsp::DistanceMatrix solved = apsp::load(args.dist);
  const apsp::PredecessorMatrix pred = apsp::load_predecessors(args.pred);
  apsp::VerifyOptions opts;
  opts.path_samples = args.samples;
  opts.sample_seed = args.seed;
  const apsp::VerificationReport report = apsp::verify_solution(input, solved, pred, opts);
  if (args.format == "json") {
    std::cout << report.to_json_text() << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> tbs = {64};
  std::vector<unsigned> threads;
  std::vector<std::string> dtypes = {"f32"};
  int reps = 15;
  std::uint64_t seed = 42;
  double density = 0.5;
  std::uint32_t wmin = 1;
  std::uint32_t wmax = 100;
  std::string solver = "blocked";
  bool pad = false;
  bool verify = false;
  std::string format = "csv";
  std::string out;
};

int run_bench(const BenchArgs& args) {
  apsp::BenchConfig config;
  config.sizes = args.sizes;
  config.tile_sizes = args.tbs;
  config.thread_counts = args.threads;
  config.elem_types.clear();
  for (const std::string& token : args.dtypes) {
    config.elem_types.push_back(parse_dtype(token));
  }
  config.reps = args.reps;
  config.seed = args.seed;
  config.density = args.density;
  config.weight_min = args.wmin;
  config.weight_max = args.wmax;
  config.solver = args.solver == "naive" ? apsp::SolverKind::Naive
                                         : apsp::SolverKind::Blocked;
  config.pad = args.pad;
  config.verify_small = args.verify;

  const std::vector<apsp::BenchRecord> records = apsp::run_sweep(config);
  write_text(apsp::render_report(records, apsp::parse_report_format(args.format)),
             args.out);
  for (const apsp::BenchRecord& rec : records) {
    if (!rec.ok) {
      std::cerr << "bench point n=" << rec.n << " tb=" << rec.tb
                << " threads=" << rec.threads << " failed: " << rec.error << "\n";
    }
  }
  return kExitOk;
}

struct TuneArgs {
  std::size_t n = 0;
  std::vector<std::size_t> tbs = {16, 32, 64, 128};
  unsigned threads = hardware_threads();
  std::uint64_t seed = 42;
  double density = 0.5;
  std::string dtype = "f32";
  bool pad = false;
};

int run_tune(const TuneArgs& args) {
  apsp::TuneOptions opts;
  opts.seed = args.seed;
  opts.density = args.density;
  opts.elem_type = parse_dtype(args.dtype);
  opts.allow_pad = args.pad;
  const apsp::TuneResult result = apsp::autotune_tb(args.n, args.tbs, args.threads, opts);
  for (const apsp::TuneSample& sample : result.samples) {
    std::printf("tune n=%zu tb=%zu threads=%u time_s=%.6f\n", args.n, sample.tb,
                args.threads, sample.seconds);
  }
  std::printf("tune best_tb=%zu\n", result.best_tb);
  return kExitOk;
}

struct ReportArgs {
  std::string in;
  std::string format = "csv";
  std::string out;
};

int run_report(const ReportArgs& args) {
  std::ifstream in(args.in);
  if (!in) throw apsp::IoError("cannot open for reading: " + args.in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::vector<apsp::BenchRecord> records = apsp::parse_records_json(buffer.str());
  write_text(apsp::render_report(records, apsp::parse_report_format(args.format)),
             args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense all-pairs shortest paths: blocked Floyd-Warshall toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("generate", "generate a seeded random graph");
  cmd_gen->add_option("--n", gen.n, "vertex count")->required()->check(CLI::PositiveNumber);
  cmd_gen->add_option("--density", gen.density, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd_gen->add_option("--wmin", gen.wmin, "minimum weight")->check(CLI::PositiveNumber);
  cmd_gen->add_option("--wmax", gen.wmax, "maximum weight")->check(CLI::PositiveNumber);
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--dtype", gen.dtype, "element type")
      ->check(CLI::IsMember({"f32", "f64"}));
  cmd_gen->add_option("--out", gen.out, "output matrix file")->required();

  SolveArgs solve;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve all-pairs shortest paths");
  cmd_solve->add_option("--in", solve.in, "input matrix file")->required();
  cmd_solve->add_option("--solver", solve.solver, "solver")
      ->check(CLI::IsMember({"naive", "blocked"}));
  cmd_solve->add_option("--tb", solve.tb, "tile size")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--threads", solve.threads, "worker count")
      ->check(CLI::PositiveNumber);
  cmd_solve->add_flag("--pad", solve.pad, "pad to a tile-size multiple");
  cmd_solve->add_option("--out-dist", solve.out_dist, "solved distance output file");
  cmd_solve->add_option("--out-pred", solve.out_pred, "predecessor output file");

  VerifyArgs verify;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check a solve against oracles");
  cmd_verify->add_option("--in", verify.in, "original input matrix")->required();
  cmd_verify->add_option("--dist", verify.dist, "solved distance file")->required();
  cmd_verify->add_option("--pred", verify.pred, "predecessor file")->required();
  cmd_verify->add_option("--samples", verify.samples, "sampled pairs for large n");
  cmd_verify->add_option("--seed", verify.seed, "sampling seed");
  cmd_verify->add_option("--format", verify.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  BenchArgs bench;
  CLI::App* cmd_bench = app.add_subcommand("bench", "run a measurement sweep");
  cmd_bench->add_option("--sizes", bench.sizes, "matrix sizes")->required();
  cmd_bench->add_option("--tbs", bench.tbs, "tile sizes");
  cmd_bench->add_option("--threads", bench.threads, "thread counts");
  cmd_bench->add_option("--dtypes", bench.dtypes, "element types")
      ->check(CLI::IsMember({"f32", "f64"}));
  cmd_bench->add_option("--reps", bench.reps, "timed repetitions per point")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--seed", bench.seed, "generator seed");
  cmd_bench->add_option("--density", bench.density, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd_bench->add_option("--wmin", bench.wmin, "minimum weight");
  cmd_bench->add_option("--wmax", bench.wmax, "maximum weight");
  cmd_bench->add_option("--solver", bench.solver, "solver under test")
      ->check(CLI::IsMember({"naive", "blocked"}));
  cmd_bench->add_flag("--pad", bench.pad, "pad sizes to tile-size multiples");
  cmd_bench->add_flag("--verify", bench.verify, "oracle-check results for n <= 512");
  cmd_bench->add_option("--format", bench.format, "report format")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));
  cmd_bench->add_option("--out", bench.out, "write report to file instead of stdout");

  TuneArgs tune;
  CLI::App* cmd_tune = app.add_subcommand("tune", "pick the fastest tile size");
  cmd_tune->add_option("--n", tune.n, "matrix size")->required()
      ->check(CLI::PositiveNumber);
  cmd_tune->add_option("--tbs", tune.tbs, "candidate tile sizes");
  cmd_tune->add_option("--threads", tune.threads, "worker count")
      ->check(CLI::PositiveNumber);
  cmd_tune->add_option("--seed", tune.seed, "generator seed");
  cmd_tune->add_option("--density", tune.density, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd_tune->add_option("--dtype", tune.dtype, "element type")
      ->check(CLI::IsMember({"f32", "f64"}));
  cmd_tune->add_flag("--pad", tune.pad, "allow padding for non-dividing candidates");

  ReportArgs report;
  CLI::App* cmd_report = app.add_subcommand("report", "re-render bench JSON records");
  cmd_report->add_option("--in", report.in, "records JSON file")->required();
  cmd_report->add_option("--format", report.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));
  cmd_report->add_option("--out", report.out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_solve->parsed()) return run_solve(solve);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_bench->parsed()) return run_bench(bench);
    if (cmd_tune->parsed()) return run_tune(tune);
    if (cmd_report->parsed()) return run_report(report);
  } catch (const apsp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const apsp::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const apsp::PlanError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const apsp::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUnexpected;
}
