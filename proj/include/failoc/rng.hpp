#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace failoc {

// One splitmix64 step. Used only for seed derivation, not as the main
// generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed of an independent substream from a base seed and a stream
// tag. The derivation is fixed so that runs with equal configs draw identical
// random sequences on every platform.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ (stream + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  return splitmix64(state);
}

// Stream tags for the independent substreams of one generation run.
inline constexpr std::uint64_t kStreamEdges = 0x01;
inline constexpr std::uint64_t kStreamPositions = 0x02;
inline constexpr std::uint64_t kStreamMonitors = 0x03;
inline constexpr std::uint64_t kStreamCalibration = 0x04;
inline constexpr std::uint64_t kStreamFailures = 0x05;

// Deterministic uniform generator. Wraps mt19937_64 but maps raw draws to
// ranges itself: the std distribution objects are implementation defined and
// would break byte-identical output across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). Rejection keeps the draw unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw < threshold);
    return draw % bound;
  }

  // Uniform int in [lo, hi], inclusive.
  int next_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("next_int: empty range");
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi) - lo + 1));
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // Fisher-Yates prefix: after the call the first `take` entries are a
  // uniform sample without replacement.
  template <typename T>
  void partial_shuffle(std::vector<T>& xs, std::size_t take) {
    if (take > xs.size()) throw std::invalid_argument("partial_shuffle: take > size");
    for (std::size_t i = 0; i < take; ++i) {
      std::size_t j = i + static_cast<std::size_t>(next_below(xs.size() - i));
      std::swap(xs[i], xs[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace failoc
