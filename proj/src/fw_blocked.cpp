#include "apsp/fw_blocked.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "apsp/error.hpp"
#include "apsp/graph_gen.hpp"

namespace apsp {

namespace {

using Clock = std::chrono::steady_clock;

template <typename T>
void validate_blocked_input(const SquareMatrix<T>& m) {
  for (T v : m.data()) {
    if (std::isnan(v)) throw DomainError("input contains NaN");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m(i, i) != T(0)) {
      throw DomainError("fw_blocked requires a zero diagonal (vertex " +
                        std::to_string(i) + ")");
    }
  }
}

struct TileRef {
  std::size_t bi;
  std::size_t bj;
  int phase;
  TileRole role;
};

// Tiles of the merged phase-2/3 wave: first the pivot block-row, then the
// pivot block-column, both excluding the pivot itself.
TileRef rowcol_tile(std::size_t task, std::size_t round, std::size_t rounds) {
  const std::size_t per_side = rounds - 1;
  const bool row_side = task < per_side;
  std::size_t other = row_side ? task : task - per_side;
  if (other >= round) ++other;
  if (row_side) return {round, other, 2, TileRole::Row};
  return {other, round, 3, TileRole::Col};
}

TileRef outer_tile(std::size_t task, std::size_t round, std::size_t rounds) {
  const std::size_t per_side = rounds - 1;
  std::size_t bi = task / per_side;
  std::size_t bj = task % per_side;
  if (bi >= round) ++bi;
  if (bj >= round) ++bj;
  return {bi, bj, 4, TileRole::Outer};
}

template <typename T>
double solve_blocked_t(SquareMatrix<T>& d, PredecessorMatrix& p, std::size_t tb,
                       unsigned threads, const SolveHooks* hooks) {
  const std::size_t n = d.size();
  const std::size_t rounds = n / tb;
  const bool start_hook = hooks && hooks->tile_start;
  const bool end_hook = hooks && hooks->tile_end;

  const auto t0 = Clock::now();
#pragma omp parallel num_threads(static_cast<int>(threads))
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::size_t kb = round * tb;
    const auto k_base = static_cast<std::int32_t>(kb);
    T* pivot = d.row(kb) + kb;
    std::int32_t* pivot_pred = p.row(kb) + kb;

    // Phase 1: pivot tile, kk steps row-parallel inside the team.
    if (start_hook) {
#pragma omp single
      hooks->tile_start(round, 1, round, round);
    }
    detail::phase1_rows(pivot, pivot_pred, n, tb, k_base);
    if (end_hook) {
#pragma omp single
      hooks->tile_end(round, 1, round, round);
    }

    // Phases 2+3 in one wave: the pivot's block-row and block-column tiles
    // are mutually independent, both depending only on the pivot.
#pragma omp for schedule(dynamic, 1)
    for (std::size_t task = 0; task < 2 * (rounds - 1); ++task) {
      const TileRef ref = rowcol_tile(task, round, rounds);
      if (start_hook) hooks->tile_start(round, ref.phase, ref.bi, ref.bj);
      T* write = d.row(ref.bi * tb) + ref.bj * tb;
      std::int32_t* pred = p.row(ref.bi * tb) + ref.bj * tb;
      if (ref.role == TileRole::Row) {
        tile_update(write, pivot, write, pred, n, tb, k_base, TileRole::Row);
      } else {
        tile_update(write, write, pivot, pred, n, tb, k_base, TileRole::Col);
      }
      if (end_hook) hooks->tile_end(round, ref.phase, ref.bi, ref.bj);
    }

    // Phase 4: every remaining tile, depending on its round-k row and
    // column tiles computed in the previous wave.
#pragma omp for schedule(dynamic, 1)
    for (std::size_t task = 0; task < (rounds - 1) * (rounds - 1); ++task) {
      const TileRef ref = outer_tile(task, round, rounds);
      if (start_hook) hooks->tile_start(round, ref.phase, ref.bi, ref.bj);
      T* write = d.row(ref.bi * tb) + ref.bj * tb;
      std::int32_t* pred = p.row(ref.bi * tb) + ref.bj * tb;
      const T* row_src = d.row(ref.bi * tb) + kb;
      const T* col_src = d.row(kb) + ref.bj * tb;
      tile_update(write, row_src, col_src, pred, n, tb, k_base, TileRole::Outer);
      if (end_hook) hooks->tile_end(round, ref.phase, ref.bi, ref.bj);
    }
  }
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SolveResult fw_blocked(const DistanceMatrix& input, std::size_t tb, unsigned threads,
                       const SolveHooks* hooks) {
  const std::size_t n = input.size();
  if (n == 0) throw PlanError("fw_blocked: empty matrix");
  if (tb == 0) throw PlanError("fw_blocked: tile size must be positive");
  if (threads == 0) throw PlanError("fw_blocked: thread count must be positive");
  if (n % tb != 0) {
    throw PlanError("fw_blocked: matrix size " + std::to_string(n) +
                    " is not a multiple of tile size " + std::to_string(tb) +
                    "; apply pad_to_multiple first (CLI: --pad)");
  }

  SolveResult result{input, PredecessorMatrix(n, kNoVertex), 0.0,
                     BlockedPlan{n, tb, n / tb, threads}};
  result.distances.visit([&](auto& m) {
    validate_blocked_input(m);
    result.wall_time_s = solve_blocked_t(m, result.predecessors, tb, threads, hooks);
  });
  return result;
}

TuneResult autotune_tb(std::size_t n, const std::vector<std::size_t>& candidates,
                       unsigned threads, const TuneOptions& opts) {
  if (candidates.empty()) throw PlanError("autotune_tb: empty candidate list");
  GraphGenSpec spec;
  spec.n = n;
  spec.density = opts.density;
  spec.seed = opts.seed;
  spec.elem_type = opts.elem_type;
  const DistanceMatrix base = generate(spec);

  TuneResult result;
  for (const std::size_t tb : candidates) {
    DistanceMatrix input = base;
    if (n % tb != 0) {
      if (!opts.allow_pad) {
        throw PlanError("autotune_tb: candidate " + std::to_string(tb) +
                        " does not divide " + std::to_string(n) +
                        " and padding is disabled");
      }
      input = pad_to_multiple(base, tb);
    }
    const SolveResult solve = fw_blocked(input, tb, threads);
    result.samples.push_back({tb, solve.wall_time_s});
  }
  const auto best = std::min_element(
      result.samples.begin(), result.samples.end(),
      [](const TuneSample& a, const TuneSample& b) { return a.seconds < b.seconds; });
  result.best_tb = best->tb;
  return result;
}

}  // namespace apsp
