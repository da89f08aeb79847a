#pragma once

#include <cstdint>
#include <random>

namespace ttanova {

// Deterministic random source. All randomness in the library flows through
// this wrapper: the uniform stream is mt19937_64 (fully specified by the
// standard) and the non-uniform transforms are implemented here, so runs
// with the same seed produce identical results on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Independent substream for block `stream` of a run seeded with `seed`.
  // Used by parallel sampling so results do not depend on thread count.
  static Rng substream(std::uint64_t seed, std::uint64_t stream);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
  }

  // Standard normal via Box-Muller (cosine branch only, no cached state).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  std::uint64_t raw() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

// SplitMix64 step, used for seed mixing.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace ttanova
