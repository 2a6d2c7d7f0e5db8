#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <limits>
#include <new>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace apsp {

/// Element type of a distance matrix. Codes match the on-disk format.
enum class ElemType : std::uint8_t { F32 = 1, F64 = 2 };

inline const char* to_string(ElemType t) { return t == ElemType::F32 ? "f32" : "f64"; }

/// Predecessor entry for "direct edge / no intermediate vertex".
inline constexpr std::int32_t kNoVertex = -1;

namespace detail {

// 64-byte alignment so tile rows start on cache-line / vector-register boundaries.
template <typename T>
struct AlignedAlloc {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAlloc() = default;
  template <typename U>
  AlignedAlloc(const AlignedAlloc<U>&) noexcept {}

  T* allocate(std::size_t count) {
    return static_cast<T*>(::operator new(count * sizeof(T), alignment));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <typename U>
  bool operator==(const AlignedAlloc<U>&) const noexcept {
    return true;
  }
};

}  // namespace detail

/// Dense square matrix, flat row-major, contiguous storage.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, T fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  T* row(std::size_t i) { return data_.data() + i * n_; }
  const T* row(std::size_t i) const { return data_.data() + i * n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<T> data() { return {data_.data(), data_.size()}; }
  std::span<const T> data() const { return {data_.data(), data_.size()}; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T, detail::AlignedAlloc<T>> data_;
};

using PredecessorMatrix = SquareMatrix<std::int32_t>;

/// Bitwise equality; unlike operator== this distinguishes -0.0 from 0.0.
template <typename T>
bool bit_equal(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return std::memcmp(a.row(0), b.row(0), a.size() * a.size() * sizeof(T)) == 0;
}

/// Distance matrix with a runtime element type (float or double payload).
/// Infinity entries mean "no path"; the representation is the element type's
/// own +infinity so that additions saturate without an overflow guard.
class DistanceMatrix {
 public:
  DistanceMatrix() : storage_(SquareMatrix<float>{}) {}
  explicit DistanceMatrix(SquareMatrix<float> m) : storage_(std::move(m)) {}
  explicit DistanceMatrix(SquareMatrix<double> m) : storage_(std::move(m)) {}

  ElemType elem_type() const {
    return std::holds_alternative<SquareMatrix<float>>(storage_) ? ElemType::F32
                                                                 : ElemType::F64;
  }

  template <typename T>
  SquareMatrix<T>& as() {
    return std::get<SquareMatrix<T>>(storage_);
  }
  template <typename T>
  const SquareMatrix<T>& as() const {
    return std::get<SquareMatrix<T>>(storage_);
  }

  template <typename F>
  decltype(auto) visit(F&& f) {
    return std::visit(std::forward<F>(f), storage_);
  }
  template <typename F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), storage_);
  }

  std::size_t size() const {
    return visit([](const auto& m) { return m.size(); });
  }
  bool empty() const { return size() == 0; }

  /// Element read widened to double. Convenience for inspection, not kernels.
  double at(std::size_t i, std::size_t j) const {
    return visit([&](const auto& m) { return static_cast<double>(m(i, j)); });
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::variant<SquareMatrix<float>, SquareMatrix<double>> storage_;
};

bool bit_equal(const DistanceMatrix& a, const DistanceMatrix& b);

/// Grows the matrix to the next multiple of tb. Original entries are kept,
/// new diagonal entries are 0, every other new entry is +infinity, so the
/// padding vertices are unreachable and shortest paths among the original
/// vertices are unchanged. Returns the input unchanged when tb divides n.
DistanceMatrix pad_to_multiple(const DistanceMatrix& d, std::size_t tb);

/// Top-left n-by-n corner; drops padding vertices after a padded solve.
DistanceMatrix truncated(const DistanceMatrix& d, std::size_t n);
PredecessorMatrix truncated(const PredecessorMatrix& p, std::size_t n);

}  // namespace apsp
