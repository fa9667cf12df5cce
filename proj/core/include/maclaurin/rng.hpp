#pragma once

#include <cstdint>
#include <random>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace maclaurin {

/// Deterministic, splittable pseudo-random stream.
///
/// A stream is identified by its root seed and a split path. The path is
/// folded into a 64-bit key with a splitmix64 finalizer, and the underlying
/// mt19937_64 is seeded from (seed, key) through std::seed_seq, whose output
/// is fixed by the standard. Two streams built from the same seed and the
/// same sequence of split() calls produce bit-identical draws on every
/// platform and independent of which thread consumes them.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  /// Child stream for index `child`; does not advance this stream.
  RngStream split(std::uint64_t child) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t path_key() const noexcept { return key_; }
  std::uint32_t split_depth() const noexcept { return depth_; }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  bool coin() { return (engine_() >> 63) != 0; }
  double normal() { return normal_(engine_); }
  double exponential() { return exponential_(engine_); }

 private:
  RngStream(std::uint64_t seed, std::uint64_t key, std::uint32_t depth);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint32_t depth_;
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
  boost::random::exponential_distribution<double> exponential_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace maclaurin
