#pragma once

#include <cstdint>

namespace rmtl {

/// xoshiro256** generator keyed by (seed, stream).  Streams with different ids
/// are derived through splitmix64, so replication r of a study draws the same
/// numbers no matter which worker runs it.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace rmtl
