#pragma once

#include <array>
#include <cstdint>

namespace pcomb {

/// Reproducible random stream: xoshiro256** keyed by (seed, stream_index).
///
/// Stream splitting: key = splitmix64(seed) ^ splitmix64(stream_index + 0x9E3779B97F4A7C15);
/// the four state words are the next four outputs of a splitmix64 generator started at key.
/// The output sequence depends only on (seed, stream_index) and is the same on every platform.
/// A stream is a value; copy it to fork, never share one across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0,1) with 53-bit resolution: (k + 0.5) * 2^-53.
  double uniform() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::array<std::uint64_t, 4> state_{};
};

/// The splitmix64 finalizer, exposed for the stream-splitting rule.
std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;

}  // namespace pcomb
