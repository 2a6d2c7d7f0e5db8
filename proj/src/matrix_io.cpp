#include "apsp/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "apsp/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "the matrix container is little-endian; big-endian hosts are unsupported");

namespace apsp {

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'P', 'S', 'P'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint8_t kElemPred = 3;
constexpr std::size_t kCsvLimit = 1024;

struct Header {
  std::uint8_t elem_code = 0;
  std::uint64_t n = 0;
};

void write_header(std::ostream& out, std::uint8_t elem_code, std::uint64_t n) {
  out.write(kMagic.data(), kMagic.size());
  const std::uint16_t version = kVersion;
  const std::uint8_t reserved = 0;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&elem_code), sizeof elem_code);
  out.write(reinterpret_cast<const char*>(&reserved), sizeof reserved);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
}

Header read_header(std::istream& in, const std::filesystem::path& path) {
  std::array<char, 4> magic{};
  std::uint16_t version = 0;
  std::uint8_t elem_code = 0;
  std::uint8_t reserved = 0;
  std::uint64_t n = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&elem_code), sizeof elem_code);
  in.read(reinterpret_cast<char*>(&reserved), sizeof reserved);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw FormatError(path.string() + ": truncated header");
  if (magic != kMagic) throw FormatError(path.string() + ": bad magic bytes");
  if (version != kVersion) {
    throw FormatError(path.string() + ": unsupported format version " +
                      std::to_string(version));
  }
  if (reserved != 0) throw FormatError(path.string() + ": nonzero reserved byte");
  if (elem_code != static_cast<std::uint8_t>(ElemType::F32) &&
      elem_code != static_cast<std::uint8_t>(ElemType::F64) && elem_code != kElemPred) {
    throw FormatError(path.string() + ": unknown element code " +
                      std::to_string(elem_code));
  }
  return {elem_code, n};
}

template <typename T>
void write_payload(std::ostream& out, const SquareMatrix<T>& m) {
  const std::size_t bytes = m.size() * m.size() * sizeof(T);
  if (bytes > 0) out.write(reinterpret_cast<const char*>(m.row(0)), bytes);
}

template <typename T>
SquareMatrix<T> read_payload(std::istream& in, std::uint64_t n,
                             const std::filesystem::path& path) {
  SquareMatrix<T> m(static_cast<std::size_t>(n), T{});
  const std::size_t bytes = m.size() * m.size() * sizeof(T);
  if (bytes > 0) in.read(reinterpret_cast<char*>(m.row(0)), bytes);
  if (!in) throw FormatError(path.string() + ": payload size mismatch (truncated)");
  if (in.peek() != std::istream::traits_type::eof()) {
    throw FormatError(path.string() + ": payload size mismatch (trailing bytes)");
  }
  return m;
}

template <typename T>
void reject_nan(const SquareMatrix<T>& m, const std::filesystem::path& path) {
  for (T v : m.data()) {
    if (std::isnan(v)) throw FormatError(path.string() + ": NaN in payload");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

template <typename T>
void append_csv_value(std::string& line, T v) {
  if (v == std::numeric_limits<T>::infinity()) {
    line += "inf";
    return;
  }
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  line.append(buf.data(), end);
}

template <typename T>
T parse_csv_value(std::string_view token, const std::filesystem::path& path) {
  if (token == "inf") return std::numeric_limits<T>::infinity();
  T v{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw FormatError(path.string() + ": bad CSV value '" + std::string(token) + "'");
  }
  if (std::isnan(v)) throw FormatError(path.string() + ": NaN in payload");
  return v;
}

template <typename T>
void save_csv_t(const SquareMatrix<T>& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << m.size() << '\n';
  std::string line;
  for (std::size_t i = 0; i < m.size(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) line += ',';
      append_csv_value(line, m(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write failed: " + path.string());
}

template <typename T>
SquareMatrix<T> load_csv_t(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing size line");
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n);
  if (ec != std::errc{} || ptr != line.data() + line.size()) {
    throw FormatError(path.string() + ": bad size line '" + line + "'");
  }
  if (n > kCsvLimit) {
    throw FormatError(path.string() + ": CSV supports n <= " + std::to_string(kCsvLimit));
  }
  SquareMatrix<T> m(n, T{});
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw FormatError(path.string() + ": missing row");
    std::size_t start = 0;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t comma = line.find(',', start);
      const bool last = j + 1 == n;
      if (last != (comma == std::string::npos)) {
        throw FormatError(path.string() + ": row has wrong column count");
      }
      const std::size_t end = last ? line.size() : comma;
      m(i, j) = parse_csv_value<T>(
          std::string_view(line).substr(start, end - start), path);
      start = end + 1;
    }
  }
  return m;
}

}  // namespace

void save(const DistanceMatrix& d, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_header(out, static_cast<std::uint8_t>(d.elem_type()), d.size());
  d.visit([&](const auto& m) { write_payload(out, m); });
  if (!out) throw IoError("write failed: " + path.string());
}

DistanceMatrix load(const std::filesystem::path& path) {
  auto in = open_in(path);
  const Header h = read_header(in, path);
  if (h.elem_code == kElemPred) {
    throw FormatError(path.string() + ": predecessor file where distances expected");
  }
  if (h.elem_code == static_cast<std::uint8_t>(ElemType::F32)) {
    auto m = read_payload<float>(in, h.n, path);
    reject_nan(m, path);
    return DistanceMatrix(std::move(m));
  }
  auto m = read_payload<double>(in, h.n, path);
  reject_nan(m, path);
  return DistanceMatrix(std::move(m));
}

void save(const PredecessorMatrix& p, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_header(out, kElemPred, p.size());
  write_payload(out, p);
  if (!out) throw IoError("write failed: " + path.string());
}

PredecessorMatrix load_predecessors(const std::filesystem::path& path) {
  auto in = open_in(path);
  const Header h = read_header(in, path);
  if (h.elem_code != kElemPred) {
    throw FormatError(path.string() + ": distance file where predecessors expected");
  }
  return read_payload<std::int32_t>(in, h.n, path);
}

void save_csv(const DistanceMatrix& d, const std::filesystem::path& path) {
  if (d.size() > kCsvLimit) {
    throw DomainError("save_csv: CSV supports n <= " + std::to_string(kCsvLimit));
  }
  d.visit([&](const auto& m) { save_csv_t(m, path); });
}

DistanceMatrix load_csv(const std::filesystem::path& path, ElemType elem_type) {
  auto in = open_in(path);
  if (elem_type == ElemType::F32) return DistanceMatrix(load_csv_t<float>(in, path));
  return DistanceMatrix(load_csv_t<double>(in, path));
}

}  // namespace apsp
