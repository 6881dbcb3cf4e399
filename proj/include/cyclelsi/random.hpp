#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "cyclelsi/cycle_function.hpp"

namespace cyclelsi {

/// Seeded generator whose draws are identical on every standard library
/// (std::*_distribution is implementation-defined, so it is not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  /// Independent stream for task `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed) ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }

  double normal() {
    // Box-Muller; u1 in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

/// Random x >= 0 with <x^2> = 1, drawn from a mixture of shapes (uniform,
/// near-constant with low-mode ripple, sparse, heavy-tailed).
CycleFunction random_admissible_function(std::size_t n, Rng& rng);

/// Random element of V1 = span{cos(2 pi j/n), sin(2 pi j/n)} with ||v||_2 = norm.
CycleFunction random_first_mode(std::size_t n, Rng& rng, double norm = 1.0);

/// Random z orthogonal to constants and V1 with ||z||_2 = norm (n >= 4).
CycleFunction random_high_frequency(std::size_t n, Rng& rng, double norm = 1.0);

}  // namespace cyclelsi
