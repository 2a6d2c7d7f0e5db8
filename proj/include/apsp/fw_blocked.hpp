#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "apsp/fw_core.hpp"
#include "apsp/matrix.hpp"

namespace apsp {

struct BlockedPlan {
  std::size_t n = 0;
  std::size_t tb = 0;
  std::size_t rounds = 0;
  unsigned threads = 1;
};

struct SolveResult {
  DistanceMatrix distances;
  PredecessorMatrix predecessors;
  double wall_time_s = 0.0;
  BlockedPlan params;
};

/// Optional instrumentation. Callbacks fire around every tile update with
/// (round, phase, block_row, block_col); phase is 1..4. Tests use these to
/// check the dependency ordering and write-region disjointness. Callbacks
/// run concurrently from worker threads and must synchronize internally.
struct SolveHooks {
  std::function<void(std::size_t, int, std::size_t, std::size_t)> tile_start;
  std::function<void(std::size_t, int, std::size_t, std::size_t)> tile_end;
};

/// Blocked Floyd-Warshall over tb-by-tb tiles in n/tb rounds. Each round runs
/// phase 1 (pivot tile, intra-tile parallel), a merged phase-2/3 wave (pivot
/// row and column tiles), and phase 4 (all remaining tiles); the waves are
/// distributed dynamically over a team of `threads` workers with a barrier
/// between phases. Distances are bit-identical to fw_naive on integer-valued
/// weights. Requires n to be a multiple of tb (see pad_to_multiple) and a
/// zero diagonal.
SolveResult fw_blocked(const DistanceMatrix& input, std::size_t tb, unsigned threads,
                       const SolveHooks* hooks = nullptr);

namespace detail {

/// Pivot-tile update with intra-tile parallelism: the kk loop stays
/// sequential; each step's rows are split across the enclosing OpenMP team
/// with a barrier after every step. Row kk itself is skipped -- with a zero
/// pivot diagonal it is a fixed point of step kk, and skipping it keeps the
/// rows other workers read write-free. Bit-identical to a Pivot tile_update.
template <typename T>
void phase1_rows(T* tile, std::int32_t* pred, std::size_t stride, std::size_t tb,
                 std::int32_t k_base) {
  for (std::size_t kk = 0; kk < tb; ++kk) {
    const T* krow = tile + kk * stride;
    const auto k_global = static_cast<std::int32_t>(k_base + static_cast<std::int64_t>(kk));
#pragma omp for schedule(static)
    for (std::size_t ii = 0; ii < tb; ++ii) {
      if (ii == kk) continue;
      const T d_ik = tile[ii * stride + kk];
      T* wrow = tile + ii * stride;
      std::int32_t* prow = pred + ii * stride;
#pragma omp simd
      for (std::size_t jj = 0; jj < tb; ++jj) {
        const T cand = d_ik + krow[jj];
        const bool better = cand < wrow[jj];
        wrow[jj] = better ? cand : wrow[jj];
        prow[jj] = better ? k_global : prow[jj];
      }
    }
  }
}

}  // namespace detail

/// Standalone phase-1 update on a tile view, run by its own team of workers.
template <typename T>
void phase1_intrablock(T* tile, std::int32_t* pred, std::size_t stride, std::size_t tb,
                       std::int32_t k_base, unsigned workers) {
#pragma omp parallel num_threads(static_cast<int>(workers))
  detail::phase1_rows(tile, pred, stride, tb, k_base);
}

struct TuneSample {
  std::size_t tb = 0;
  double seconds = 0.0;
};

struct TuneResult {
  std::size_t best_tb = 0;
  std::vector<TuneSample> samples;
};

struct TuneOptions {
  std::uint64_t seed = 42;
  double density = 0.5;
  ElemType elem_type = ElemType::F32;
  bool allow_pad = false;
};

/// One timed solve per candidate tile size on a seeded generated matrix;
/// returns the fastest candidate together with every measured timing.
TuneResult autotune_tb(std::size_t n, const std::vector<std::size_t>& candidates,
                       unsigned threads, const TuneOptions& opts = {});

}  // namespace apsp
