#pragma once

#include <cmath>
#include <cstdint>

namespace pegbench {

/// Counter-based random stream. Each (master_seed, stream_id) pair names an
/// independent stream; the n-th output is a pure function of (seed, id, n),
/// so workers can derive per-trial streams without coordination and replay
/// them bit-identically on any machine.
///
/// The generator is a SplitMix64-style counter walk: output(n) is the
/// avalanche finalizer applied to base + n * golden_gamma.
class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream_id)
      : base_(mix64(mix64(master_seed + kGamma) ^ mix64(stream_id + kLeaf))) {}

  uint64_t next_u64() { return mix64(base_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Standard normal draw (Box-Muller, cosine branch). Consumes exactly two
  /// uniforms per call so the stream position stays predictable.
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  double normal(double mean, double stddev) {
    return mean + stddev * normal();
  }

  /// Fisher-Yates shuffle of [first, last).
  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; --i) {
      uint64_t j = bounded(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

  /// Uniform integer in [0, bound) without modulo bias.
  uint64_t bounded(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr uint64_t kLeaf = 0xD1B54A32D192ED03ull;

  static uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t base_;
  uint64_t counter_ = 0;
};

}  // namespace pegbench
