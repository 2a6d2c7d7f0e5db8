#include "apsp/matrix.hpp"

#include <cstring>

#include "apsp/error.hpp"

namespace apsp {

bool bit_equal(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.elem_type() != b.elem_type()) return false;
  if (a.elem_type() == ElemType::F32) return bit_equal(a.as<float>(), b.as<float>());
  return bit_equal(a.as<double>(), b.as<double>());
}

namespace {

template <typename T>
SquareMatrix<T> pad_t(const SquareMatrix<T>& m, std::size_t target) {
  SquareMatrix<T> out(target, std::numeric_limits<T>::infinity());
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::memcpy(out.row(i), m.row(i), n * sizeof(T));
  }
  for (std::size_t v = n; v < target; ++v) {
    out(v, v) = T(0);
  }
  return out;
}

template <typename T>
SquareMatrix<T> corner_t(const SquareMatrix<T>& m, std::size_t n) {
  SquareMatrix<T> out(n, T{});
  for (std::size_t i = 0; i < n; ++i) {
    std::memcpy(out.row(i), m.row(i), n * sizeof(T));
  }
  return out;
}

}  // namespace

DistanceMatrix pad_to_multiple(const DistanceMatrix& d, std::size_t tb) {
  if (tb == 0) throw DomainError("pad_to_multiple: tile size must be positive");
  const std::size_t n = d.size();
  if (n % tb == 0) return d;
  const std::size_t target = (n / tb + 1) * tb;
  return d.visit([&](const auto& m) { return DistanceMatrix(pad_t(m, target)); });
}

DistanceMatrix truncated(const DistanceMatrix& d, std::size_t n) {
  if (n > d.size()) throw DomainError("truncated: target size exceeds matrix size");
  if (n == d.size()) return d;
  return d.visit([&](const auto& m) { return DistanceMatrix(corner_t(m, n)); });
}

PredecessorMatrix truncated(const PredecessorMatrix& p, std::size_t n) {
  if (n > p.size()) throw DomainError("truncated: target size exceeds matrix size");
  if (n == p.size()) return p;
  return corner_t(p, n);
}

}  // namespace apsp
