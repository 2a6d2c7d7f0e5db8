#include "apsp/graph_gen.hpp"

#include <limits>
#include <random>

#include "apsp/error.hpp"

namespace apsp {

namespace {

// Unbiased draw in [0, range) by rejection; keeps the generator bit-stable
// across standard libraries (uniform_int_distribution is not portable).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % range;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % range;
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

template <typename T>
SquareMatrix<T> generate_t(const GraphGenSpec& spec) {
  SquareMatrix<T> m(spec.n, std::numeric_limits<T>::infinity());
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t range = spec.weight_max - spec.weight_min + 1;
  for (std::size_t i = 0; i < spec.n; ++i) {
    T* row = m.row(i);
    for (std::size_t j = 0; j < spec.n; ++j) {
      if (i == j) {
        row[j] = T(0);
        continue;
      }
      if (unit_uniform(rng) < spec.density) {
        row[j] = static_cast<T>(spec.weight_min + draw_below(rng, range));
      }
    }
  }
  return m;
}

}  // namespace

DistanceMatrix generate(const GraphGenSpec& spec) {
  if (spec.n == 0) throw DomainError("generate: vertex count must be positive");
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
    throw DomainError("generate: density must be in [0, 1]");
  }
  if (spec.weight_min < 1 || spec.weight_min > spec.weight_max) {
    throw DomainError("generate: weight range requires 1 <= weight_min <= weight_max");
  }
  if (spec.elem_type == ElemType::F32) return DistanceMatrix(generate_t<float>(spec));
  return DistanceMatrix(generate_t<double>(spec));
}

}  // namespace apsp
