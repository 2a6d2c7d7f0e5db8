#pragma once

#include <filesystem>

#include "apsp/matrix.hpp"

namespace apsp {

// Binary container: magic "APSP", u16 version = 1, u8 element code
// (1 = f32 distances, 2 = f64 distances, 3 = i32 predecessors), u8 reserved = 0,
// u64 vertex count n, then n*n elements little-endian row-major.

void save(const DistanceMatrix& d, const std::filesystem::path& path);
DistanceMatrix load(const std::filesystem::path& path);

void save(const PredecessorMatrix& p, const std::filesystem::path& path);
PredecessorMatrix load_predecessors(const std::filesystem::path& path);

// CSV: first line is n, then n comma-separated rows; infinity spelled "inf".
// Supported for n <= 1024.
void save_csv(const DistanceMatrix& d, const std::filesystem::path& path);
DistanceMatrix load_csv(const std::filesystem::path& path, ElemType elem_type);

}  // namespace apsp
