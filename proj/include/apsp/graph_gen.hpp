#pragma once

#include <cstdint>

#include "apsp/matrix.hpp"

namespace apsp {

/// Seeded random dense graph: every ordered pair (i, j), i != j, gets a
/// directed edge with probability `density`, weighted with a uniform integer
/// in [weight_min, weight_max]. Missing edges are +infinity, the diagonal
/// is 0. Identical specs produce bit-identical matrices.
struct GraphGenSpec {
  std::size_t n = 0;
  double density = 0.5;
  std::uint32_t weight_min = 1;
  std::uint32_t weight_max = 100;
  std::uint64_t seed = 0;
  ElemType elem_type = ElemType::F32;
};

DistanceMatrix generate(const GraphGenSpec& spec);

}  // namespace apsp
