#pragma once

// Multi-start projected gradient search shared by the cycle and product
// estimators. Internal to the library.

#include <functional>
#include <span>
#include <vector>

#include "cyclelsi/optimize.hpp"
#include "cyclelsi/random.hpp"

namespace cyclelsi::detail {

enum class Denominator {
  EntropyOfSquare,  // Ent(x^2)
  Cubic,            // <(x-1)^2(x+2)>
};

struct RatioProblem {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> energy;
  /// Writes dim * d(energy)/dx_i, the gradient for the normalised inner
  /// product <u, w> = mean(u w).
  std::function<void(std::span<const double>, std::span<double>)> energy_gradient;
  Denominator denominator = Denominator::EntropyOfSquare;
  /// Upper bound reported next to the interior search result.
  double cap = 0.0;
};

using Initializer = std::function<std::vector<double>(int restart, Rng& rng)>;

RatioMinResult minimize_ratio(const RatioProblem& problem, const Initializer& init,
                              const OptimizerConfig& cfg);

double denominator_value(Denominator d, std::span<const double> x);

}  // namespace cyclelsi::detail
