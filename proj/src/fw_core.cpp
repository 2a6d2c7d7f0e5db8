#include "apsp/fw_core.hpp"

#include <chrono>
#include <cmath>

#include "apsp/error.hpp"

namespace apsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename T>
void reject_nan_input(const SquareMatrix<T>& m) {
  for (T v : m.data()) {
    if (std::isnan(v)) throw DomainError("input contains NaN");
  }
}

// Algorithm reference: plain k-i-j triple loop, strict-improvement updates.
// Deliberately written in the branchy form, independent of the select-form
// tile kernel it is used to cross-check.
template <typename T>
void fw_naive_t(SquareMatrix<T>& d, PredecessorMatrix& p) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    const T* krow = d.row(k);
    const auto k32 = static_cast<std::int32_t>(k);
    for (std::size_t i = 0; i < n; ++i) {
      T* irow = d.row(i);
      std::int32_t* prow = p.row(i);
      const T d_ik = irow[k];
      for (std::size_t j = 0; j < n; ++j) {
        const T cand = d_ik + krow[j];
        if (cand < irow[j]) {
          irow[j] = cand;
          prow[j] = k32;
        }
      }
    }
  }
}

// Parallel variant: rows of each k step split across the team. Row k is a
// fixed point of step k (zero diagonal) and is skipped, so the rows other
// threads read are never written within a step.
template <typename T>
void fw_naive_parallel_t(SquareMatrix<T>& d, PredecessorMatrix& p, unsigned threads) {
  const std::size_t n = d.size();
#pragma omp parallel num_threads(static_cast<int>(threads))
  for (std::size_t k = 0; k < n; ++k) {
    const T* krow = d.row(k);
    const auto k32 = static_cast<std::int32_t>(k);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      T* irow = d.row(i);
      std::int32_t* prow = p.row(i);
      const T d_ik = irow[k];
#pragma omp simd
      for (std::size_t j = 0; j < n; ++j) {
        const T cand = d_ik + krow[j];
        const bool better = cand < irow[j];
        irow[j] = better ? cand : irow[j];
        prow[j] = better ? k32 : prow[j];
      }
    }
  }
}

}  // namespace

NaiveResult fw_naive(const DistanceMatrix& input) {
  NaiveResult result{input, PredecessorMatrix(input.size(), kNoVertex), 0.0};
  result.distances.visit([&](auto& m) {
    reject_nan_input(m);
    const auto start = Clock::now();
    fw_naive_t(m, result.predecessors);
    result.wall_time_s = seconds_since(start);
  });
  return result;
}

NaiveResult fw_naive_parallel(const DistanceMatrix& input, unsigned threads) {
  if (threads == 0) throw PlanError("fw_naive_parallel: thread count must be positive");
  NaiveResult result{input, PredecessorMatrix(input.size(), kNoVertex), 0.0};
  result.distances.visit([&](auto& m) {
    reject_nan_input(m);
    const auto start = Clock::now();
    fw_naive_parallel_t(m, result.predecessors, threads);
    result.wall_time_s = seconds_since(start);
  });
  return result;
}

std::optional<std::int32_t> detect_negative_cycle(const DistanceMatrix& solved) {
  const std::size_t n = solved.size();
  return solved.visit([&](const auto& m) -> std::optional<std::int32_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (m(i, i) < 0) return static_cast<std::int32_t>(i);
    }
    return std::nullopt;
  });
}

}  // namespace apsp
