#pragma once

#include <cmath>
#include <cstdint>

namespace laakso {

// Counter-based splittable stream: draw i of stream (seed, stream_id) is a pure
// function of (seed, stream_id, i), so parallel consumers never interact.
class SplitStream {
 public:
  SplitStream(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint64_t substream = 0)
      : key_(mix(mix(mix(0x243F6A8885A308D3ull ^ seed) + stream_id) + substream)) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

  /// Uniform in (0, 1]; never returns 0, safe under log().
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform in [0, 1).
  double next_unit_open() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_exponential(double rate) { return -std::log(next_unit()) / rate; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit_open(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace laakso
