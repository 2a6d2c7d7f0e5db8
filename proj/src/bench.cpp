#include "apsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "apsp/error.hpp"
#include "apsp/fw_blocked.hpp"
#include "apsp/fw_core.hpp"
#include "apsp/graph_gen.hpp"
#include "apsp/oracle.hpp"

namespace apsp {

double gflops(std::size_t n, double seconds) {
  if (n < 1) throw DomainError("gflops: vertex count must be positive");
  if (!(seconds > 0.0)) throw DomainError("gflops: time must be positive");
  const double nd = static_cast<double>(n);
  return 2.0 * nd * nd * nd / (seconds * 1e9);
}

BenchEnv BenchEnv::real() {
  BenchEnv env;
  env.now = [] {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };
  env.solve = [](const DistanceMatrix& input, std::size_t tb, unsigned threads,
                 SolverKind kind) {
    if (kind == SolverKind::Naive) {
      NaiveResult r =
          threads <= 1 ? fw_naive(input) : fw_naive_parallel(input, threads);
      return SolveOutput{std::move(r.distances), std::move(r.predecessors)};
    }
    SolveResult r = fw_blocked(input, tb, threads);
    return SolveOutput{std::move(r.distances), std::move(r.predecessors)};
  };
  return env;
}

namespace {

unsigned hardware_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

void fill_stats(BenchRecord& rec) {
  const auto count = static_cast<double>(rec.rep_times.size());
  double sum = 0.0;
  double min = rec.rep_times.front();
  for (double t : rec.rep_times) {
    sum += t;
    min = std::min(min, t);
  }
  rec.mean_s = sum / count;
  rec.min_s = min;
  if (rec.rep_times.size() > 1) {
    double sq = 0.0;
    for (double t : rec.rep_times) sq += (t - rec.mean_s) * (t - rec.mean_s);
    rec.stddev_s = std::sqrt(sq / (count - 1.0));
  }
  rec.gflops_mean = gflops(rec.n, rec.mean_s);
  rec.gflops_peak = gflops(rec.n, rec.min_s);
}

}  // namespace

std::vector<BenchRecord> run_sweep(const BenchConfig& config, const BenchEnv& env) {
  if (config.reps < 1) throw DomainError("run_sweep: reps must be >= 1");
  if (config.sizes.empty()) throw DomainError("run_sweep: no sizes given");
  if (config.elem_types.empty()) throw DomainError("run_sweep: no element types given");
  if (config.tile_sizes.empty() && config.solver == SolverKind::Blocked) {
    throw DomainError("run_sweep: no tile sizes given");
  }
  if (!env.now || !env.solve) throw DomainError("run_sweep: incomplete environment");

  const std::vector<unsigned> threads_axis =
      config.thread_counts.empty() ? std::vector<unsigned>{hardware_threads()}
                                   : config.thread_counts;
  // The naive solver has no tile axis; keep a single record per point.
  const std::vector<std::size_t> tb_axis =
      config.solver == SolverKind::Naive ? std::vector<std::size_t>{0}
                                         : config.tile_sizes;

  std::vector<BenchRecord> records;
  for (const std::size_t n : config.sizes) {
    for (const std::size_t tb : tb_axis) {
      for (const unsigned threads : threads_axis) {
        for (const ElemType elem_type : config.elem_types) {
          BenchRecord rec;
          rec.n = n;
          rec.tb = tb;
          rec.threads = threads;
          rec.elem_type = elem_type;
          rec.reps = config.reps;
          try {
            GraphGenSpec spec;
            spec.n = n;
            spec.density = config.density;
            spec.weight_min = config.weight_min;
            spec.weight_max = config.weight_max;
            spec.seed = config.seed;
            spec.elem_type = elem_type;
            DistanceMatrix input = generate(spec);
            const bool will_verify = config.verify_small && n <= 512;
            DistanceMatrix original;
            if (will_verify) original = input;
            if (tb != 0 && n % tb != 0) {
              if (!config.pad) {
                throw PlanError("size " + std::to_string(n) +
                                " is not a multiple of tile size " + std::to_string(tb) +
                                " (enable padding)");
              }
              input = pad_to_multiple(input, tb);
            }

            (void)env.solve(input, tb, threads, config.solver);  // warm-up, untimed

            SolveOutput first;
            for (int rep = 0; rep < config.reps; ++rep) {
              const double t0 = env.now();
              SolveOutput out = env.solve(input, tb, threads, config.solver);
              const double t1 = env.now();
              rec.rep_times.push_back(t1 - t0);
              if (rep == 0) first = std::move(out);
            }
            fill_stats(rec);

            if (will_verify) {
              const auto report =
                  verify_solution(original, truncated(first.distances, n),
                                  truncated(first.predecessors, n));
              if (!report.all_passed()) {
                rec.ok = false;
                rec.error = "oracle verification failed";
              }
            }
          } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
            rec.rep_times.clear();
          }
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

}  // namespace apsp
