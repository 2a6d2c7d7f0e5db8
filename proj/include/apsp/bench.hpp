#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "apsp/matrix.hpp"

namespace apsp {

enum class SolverKind { Naive, Blocked };

inline const char* to_string(SolverKind s) {
  return s == SolverKind::Naive ? "naive" : "blocked";
}

/// One sweep: the cartesian product of sizes x tile_sizes x thread_counts x
/// elem_types, each point measured as 1 untimed warm-up solve plus `reps`
/// timed solves of the same seeded matrix. For the naive solver the tile-size
/// axis collapses to a single tb = 0 entry.
struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> tile_sizes = {64};
  std::vector<unsigned> thread_counts;  // empty: filled with the hardware count
  std::vector<ElemType> elem_types = {ElemType::F32};
  int reps = 15;
  std::uint64_t seed = 42;
  SolverKind solver = SolverKind::Blocked;
  double density = 0.5;
  std::uint32_t weight_min = 1;
  std::uint32_t weight_max = 100;
  bool pad = false;
  bool verify_small = false;  // oracle-check one rep's result when n <= 512
};

struct BenchRecord {
  std::size_t n = 0;
  std::size_t tb = 0;
  unsigned threads = 1;
  ElemType elem_type = ElemType::F32;
  int reps = 0;
  std::vector<double> rep_times;
  double mean_s = 0.0;
  double min_s = 0.0;
  double stddev_s = 0.0;
  double gflops_mean = 0.0;
  double gflops_peak = 0.0;
  bool ok = true;
  std::string error;
};

/// 2 * n^3 / (t * 1e9): one addition and one comparison per innermost
/// iteration. Throws DomainError for t <= 0 or n < 1.
double gflops(std::size_t n, double seconds);

struct SolveOutput {
  DistanceMatrix distances;
  PredecessorMatrix predecessors;
};

/// Seams for testing the measurement protocol: a monotonic clock and the
/// solver under test. Defaults wire up steady_clock and the real solvers.
struct BenchEnv {
  std::function<double()> now;
  std::function<SolveOutput(const DistanceMatrix&, std::size_t tb, unsigned threads,
                            SolverKind)>
      solve;

  static BenchEnv real();
};

/// Runs the sweep; per-point failures are recorded in the returned records,
/// never fatal to the rest of the sweep. Timed region covers the solve only.
std::vector<BenchRecord> run_sweep(const BenchConfig& config,
                                   const BenchEnv& env = BenchEnv::real());

enum class ReportFormat { Csv, Json, Markdown };

/// Accepts "csv", "json", "markdown"; throws DomainError otherwise.
ReportFormat parse_report_format(std::string_view token);

/// Renders records sorted by (n, tb, threads, dtype). CSV column order is
/// fixed; markdown renders one table per element type; JSON is an array of
/// objects with the CSV field names.
std::string render_report(std::vector<BenchRecord> records, ReportFormat format);

/// Parses records back from the JSON rendering (per-rep times are not part
/// of the interchange format, only their count).
std::vector<BenchRecord> parse_records_json(const std::string& text);

}  // namespace apsp
