#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "maclaurin/sampling.hpp"

namespace maclaurin {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::ostream& os, T v) {
  std::array<unsigned char, sizeof(T)> b;
  std::memcpy(b.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  os.write(reinterpret_cast<const char*>(b.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> b;
  if (!is.read(reinterpret_cast<char*>(b.data()), sizeof(T))) {
    throw std::runtime_error("truncated sample matrix: " + path.string());
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T v;
  std::memcpy(&v, b.data(), sizeof(T));
  return v;
}

constexpr std::array<char, 4> kMagic{'M', 'C', 'L', 'S'};

}  // namespace

void write_sample_matrix(const std::filesystem::path& path, std::span<const SampleVector> rows) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("write_sample_matrix: rows differ in length");
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(n));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(rows.size()));
  put_le<float>(os, rows.empty() ? 0.0f : static_cast<float>(rows.front().p()));
  for (const auto& r : rows) {
    for (double x : r.coords()) put_le<double>(os, x);
  }
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

SampleMatrix read_sample_matrix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("not a sample matrix (bad magic): " + path.string());
  SampleMatrix m;
  m.n = get_le<std::uint32_t>(is, path);
  m.rows = get_le<std::uint32_t>(is, path);
  m.p = get_le<float>(is, path);
  m.values.resize(static_cast<std::size_t>(m.n) * m.rows);
  for (auto& v : m.values) v = get_le<double>(is, path);
  return m;
}

}  // namespace maclaurin
