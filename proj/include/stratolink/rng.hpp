#pragma once

#include <cstdint>

namespace stratolink {

/// SplitMix64 step; the output sequence for a given start state is fixed
/// across platforms, which keeps Monte Carlo runs reproducible bit-for-bit.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Per-trial streams are derived from the
/// master seed by a counter construction, so trials can run in any order
/// (or concurrently) and still produce identical draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {
    // one warm-up round decorrelates small seeds
    (void)splitmix64_next(state_);
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// Stream for one Monte Carlo trial.
inline RngStream trial_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
  std::uint64_t s = master_seed ^ (0x9E3779B97F4A7C15ULL * (trial_index + 1));
  std::uint64_t derived = splitmix64_next(s);
  return RngStream(derived);
}

}  // namespace stratolink
