#pragma once

#include <cstdint>
#include <random>

namespace d2d {

// SplitMix64 finalizer. Used to derive independent sub-streams from one
// master seed: sub_seed(seed, 0), sub_seed(seed, 1), ... are the stream
// seeds for realization 0, 1, ...; inside a realization the same scheme
// splits again (topology draw, cache draw). Documented in the config
// reference so runs are reproducible from a single integer.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Thin wrapper over std::mt19937_64 that draws doubles from the top 53
// bits. std::uniform_real_distribution is implementation-defined, so the
// bit-for-bit determinism contract is kept by never using it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace d2d
