#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apsp/fw_blocked.hpp"
#include "apsp/matrix.hpp"

namespace apsp {

/// A concrete path from one vertex to another, as input-graph edges.
struct PathTrace {
  std::vector<std::int32_t> vertices;
  double total_cost = 0.0;
};

/// Dijkstra from every source over the dense adjacency interpretation of the
/// input. Independent of the Floyd-Warshall code paths; requires nonnegative
/// weights and a zero diagonal.
DistanceMatrix dijkstra_apsp(const DistanceMatrix& input);

/// Expands the predecessor matrix into the recorded path from `from` to `to`.
/// Returns nullopt for unreachable pairs. Costs are summed from input edges.
/// Throws VerifyError when the predecessor matrix is malformed (cycle during
/// expansion, self-referential entry, or an entry naming a missing edge).
std::optional<PathTrace> reconstruct_path(const PredecessorMatrix& pred,
                                          const DistanceMatrix& input, std::int32_t from,
                                          std::int32_t to);

struct CheckFailure {
  std::int64_t i = -1;
  std::int64_t j = -1;
  std::int64_t k = -1;  // -1 when the check has no third coordinate
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<CheckFailure> samples = {};  // first few failure sites
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::uint64_t sample_seed = 0;

  bool all_passed() const;
  std::string to_text() const;
  std::string to_json_text() const;
};

struct VerifyOptions {
  std::uint64_t sample_seed = 0x5eed;
  /// Pairs checked exhaustively up to this n; sampled beyond it.
  std::size_t exhaustive_limit = 256;
  std::size_t path_samples = 10000;
};

/// Full solution check: (1) distances equal dijkstra_apsp exactly for
/// integer-valued inputs (relative tolerance 1e-6 / 1e-12 otherwise),
/// (2) reconstructed path costs equal the solved distances over all pairs
/// (n <= exhaustive_limit) or a seeded sample, (3) monotonicity and
/// path-consistency invariants. Failures land in the report, not exceptions.
VerificationReport verify_solution(const DistanceMatrix& input, const DistanceMatrix& solved,
                                   const PredecessorMatrix& pred,
                                   const VerifyOptions& opts = {});
VerificationReport verify_solution(const DistanceMatrix& input, const SolveResult& result,
                                   const VerifyOptions& opts = {});

}  // namespace apsp
