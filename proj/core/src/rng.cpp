#include "maclaurin/rng.hpp"

namespace maclaurin {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : RngStream(seed, 0, 0) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t key, std::uint32_t depth)
    : seed_(seed), key_(key), depth_(depth), engine_(make_engine(seed, key)) {}

RngStream RngStream::split(std::uint64_t child) const {
  const std::uint64_t key = splitmix64(key_ ^ splitmix64(child + 0x632be59bd9b4e019ULL * (depth_ + 1)));
  return RngStream(seed_, key, depth_ + 1);
}

}  // namespace maclaurin
