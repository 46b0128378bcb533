#pragma once

#include <cstdint>
#include <random>

namespace momdwa {

/// 64-bit mixer used to derive sub-stream seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic uniform stream. Doubles are built from the top 53 bits of
/// the engine output, so a given seed always yields the same sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform draw in [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform index in {0, ..., n-1}; n must be >= 1.
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

/// Named sub-streams expanded from one root seed. Each consumer draws from
/// its own stream, so adding draws in one place (e.g. extra diagnostics)
/// never shifts the sequences seen by the others.
struct SeedStreams {
  RandomStream init;
  RandomStream update;
  RandomStream boundary;
  RandomStream leader;

  explicit SeedStreams(std::uint64_t root)
      : init(derive(root, 0)),
        update(derive(root, 1)),
        boundary(derive(root, 2)),
        leader(derive(root, 3)) {}

  static std::uint64_t derive(std::uint64_t root, int stream) {
    std::uint64_t state = root;
    std::uint64_t seed = 0;
    for (int i = 0; i <= stream; ++i) seed = splitmix64(state);
    return seed;
  }
};

}  // namespace momdwa
