#pragma once

#include <cassert>
#include <cstdint>
#include <optional>

#include "apsp/matrix.hpp"

namespace apsp {

/// Phase role of a tile update. Names which of the three operands alias:
/// Pivot aliases all three, Row aliases write/col-source, Col aliases
/// write/row-source, Outer aliases nothing.
enum class TileRole { Pivot, Row, Col, Outer };

struct NaiveResult {
  DistanceMatrix distances;
  PredecessorMatrix predecessors;
  double wall_time_s = 0.0;
};

/// Reference Floyd-Warshall: k-outermost triple loop over a working copy of
/// the input. Strict-improvement updates record the intermediate vertex k in
/// the predecessor matrix; entries that keep their direct edge stay kNoVertex.
NaiveResult fw_naive(const DistanceMatrix& input);

/// Same update schedule with each k step's i loop shared across threads.
/// Produces bit-identical results to fw_naive.
NaiveResult fw_naive_parallel(const DistanceMatrix& input, unsigned threads);

/// First vertex whose solved self-distance is negative, if any.
std::optional<std::int32_t> detect_negative_cycle(const DistanceMatrix& solved);

namespace detail {

// One kk step over the tile rows. Safe under the Pivot/Row/Col aliasing
// patterns: with a zero pivot diagonal, the kk row and kk column of the
// write tile are fixed points of step kk.
template <typename T>
inline void tile_step(T* write, const T* row_src, const T* col_row,
                      std::int32_t* pred, std::size_t stride, std::size_t tb,
                      std::size_t kk, std::int32_t k_global) {
  for (std::size_t ii = 0; ii < tb; ++ii) {
    const T d_ik = row_src[ii * stride + kk];
    T* wrow = write + ii * stride;
    std::int32_t* prow = pred + ii * stride;
#pragma omp simd
    for (std::size_t jj = 0; jj < tb; ++jj) {
      const T cand = d_ik + col_row[jj];
      const bool better = cand < wrow[jj];
      wrow[jj] = better ? cand : wrow[jj];
      prow[jj] = better ? k_global : prow[jj];
    }
  }
}

// Outer-tile update with the kk loop register-blocked four wide. Both source
// tiles are disjoint from the write tile and stay constant for the whole
// call, so four steps can share one load/store of the write row. Each
// element still applies its candidates in ascending kk order, which keeps
// the result (distances and predecessors) bit-identical to the one-step
// loop.
template <typename T>
inline void tile_update_outer(T* __restrict write, const T* __restrict row_src,
                              const T* __restrict col_src, std::int32_t* __restrict pred,
                              std::size_t stride, std::size_t tb, std::int32_t k_base) {
  std::size_t kk = 0;
  for (; kk + 4 <= tb; kk += 4) {
    const T* c0 = col_src + (kk + 0) * stride;
    const T* c1 = col_src + (kk + 1) * stride;
    const T* c2 = col_src + (kk + 2) * stride;
    const T* c3 = col_src + (kk + 3) * stride;
    const std::int32_t k0 = k_base + static_cast<std::int32_t>(kk);
    for (std::size_t ii = 0; ii < tb; ++ii) {
      const T* rrow = row_src + ii * stride + kk;
      const T d0 = rrow[0];
      const T d1 = rrow[1];
      const T d2 = rrow[2];
      const T d3 = rrow[3];
      T* wrow = write + ii * stride;
      std::int32_t* prow = pred + ii * stride;
#pragma omp simd
      for (std::size_t jj = 0; jj < tb; ++jj) {
        T w = wrow[jj];
        std::int32_t p = prow[jj];
        T cand = d0 + c0[jj];
        bool better = cand < w;
        w = better ? cand : w;
        p = better ? k0 : p;
        cand = d1 + c1[jj];
        better = cand < w;
        w = better ? cand : w;
        p = better ? k0 + 1 : p;
        cand = d2 + c2[jj];
        better = cand < w;
        w = better ? cand : w;
        p = better ? k0 + 2 : p;
        cand = d3 + c3[jj];
        better = cand < w;
        w = better ? cand : w;
        p = better ? k0 + 3 : p;
        wrow[jj] = w;
        prow[jj] = p;
      }
    }
  }
  for (std::size_t left = tb - kk; left > 0; --left, ++kk) {
    const auto k_global = static_cast<std::int32_t>(k_base + static_cast<std::int64_t>(kk));
    tile_step(write, row_src, col_src + kk * stride, pred, stride, tb, kk, k_global);
  }
}

}  // namespace detail

/// Min-plus update of one tb-by-tb tile:
///
///   for kk ascending:  write[ii][jj] <- min(write[ii][jj],
///                                           row_src[ii][kk] + col_src[kk][jj])
///
/// recording k_base+kk in the predecessor tile on strict improvement. All
/// tiles are views with the same row stride; aliasing must match `role`.
/// The ascending kk order carries the data dependency for Pivot/Row/Col;
/// Outer tiles have constant sources and take a register-blocked path with
/// the same per-element update order. The innermost loops are stride-1 and
/// branch-free (select form) so they vectorize; distance and predecessor
/// lanes share one predicate.
template <typename T>
void tile_update(T* write, const T* row_src, const T* col_src, std::int32_t* pred,
                 std::size_t stride, std::size_t tb, std::int32_t k_base, TileRole role) {
  assert(role != TileRole::Pivot || (write == row_src && write == col_src));
  assert(role != TileRole::Row || (write == col_src && write != row_src));
  assert(role != TileRole::Col || (write == row_src && write != col_src));
  assert(role != TileRole::Outer || (write != row_src && write != col_src));

  if (role == TileRole::Outer) {
    detail::tile_update_outer(write, row_src, col_src, pred, stride, tb, k_base);
    return;
  }
  for (std::size_t kk = 0; kk < tb; ++kk) {
    const auto k_global = static_cast<std::int32_t>(k_base + static_cast<std::int64_t>(kk));
    detail::tile_step(write, row_src, col_src + kk * stride, pred, stride, tb, kk,
                      k_global);
  }
}

}  // namespace apsp
