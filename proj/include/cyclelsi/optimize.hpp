#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cyclelsi/cycle_function.hpp"

namespace cyclelsi {

enum class Projection {
  ClampRenormalize,  // clamp negatives to 0, rescale to <x^2> = 1
  SquareReparam,     // optimise y, use x = y^2 rescaled to <x^2> = 1
};

struct OptimizerConfig {
  std::uint64_t seed = 0;
  int restarts = 64;
  int max_iters = 20000;
  double step_init = 0.1;
  double armijo_shrink = 0.5;
  double grad_tol = 1e-10;
  /// Lower bound on the denominator (entropy or cubic term); excludes the
  /// 0/0 point at the constant function.
  double entropy_floor = 1e-8;
  Projection projection = Projection::ClampRenormalize;
  /// Worker threads for restarts. Results do not depend on this.
  unsigned threads = 1;
  bool record_history = false;

  /// Throws InvalidArgument unless tolerances are positive, restarts >= 1
  /// and armijo_shrink lies in (0, 1).
  void validate() const;
};

struct RatioMinResult {
  /// min(interior_value, cap).
  double value = 0.0;
  /// Best ratio found at a feasible point; equals the ratio at `argmin`.
  double interior_value = 0.0;
  /// Unconditional upper bound on the infimum (half the spectral gap for
  /// the log-Sobolev ratio, 2 lambda_n / 3 for the cubic ratio).
  double cap = 0.0;
  /// Values of the minimiser over the state space, normalised to <x^2> = 1.
  std::vector<double> argmin;
  int restarts_used = 0;
  int best_restart = -1;
  /// |interior_value - cap| <= 1e-6 max(1, cap). The infimum then sits at the
  /// constant function, where the ratio is 0/0, and is not attained.
  bool reached_cap = false;
  /// The best restart met the stationarity test, or reached_cap.
  bool converged = false;
  long iterations = 0;
  /// (iteration, ratio) samples of the best restart when requested.
  std::vector<std::pair<long, double>> history;
};

/// Numerical log-Sobolev constant: inf E_n(f,f) / Ent(f^2) over f >= 0,
/// <f^2> = 1, Ent(f^2) >= entropy_floor. n >= 2.
RatioMinResult estimate_alpha(std::size_t n, const OptimizerConfig& cfg = {});

/// Numerical cubic-Sobolev constant: inf D(x) / <(x-1)^2(x+2)> over x >= 0,
/// <x^2> = 1. n >= 4.
RatioMinResult estimate_cubic_constant(std::size_t n, const OptimizerConfig& cfg = {});

/// E_n(f,f) / Ent(f^2).
double log_sobolev_ratio(std::span<const double> f);
/// D(x) / <(x-1)^2(x+2)> for x on the unit sphere.
double cubic_ratio(std::span<const double> x);

/// Euclidean gradient of log_sobolev_ratio in the value coordinates, with the
/// derivative of f_i^2 log f_i^2 taken as 0 at f_i = 0. Throws NegativeInput
/// for negative entries and DegenerateEntropy if Ent(f^2) < entropy_floor.
CycleFunction alpha_ratio_gradient(const CycleFunction& f, double entropy_floor = 1e-8);

struct ScanPoint {
  double eps;
  double deficit;
  double scaled;  // deficit / eps^2 (0 at eps = 0)
};

/// Cubic deficit along x = (1 + eps v) / ||1 + eps v||_2. With
/// require_first_mode the direction must lie in V1 (NotInV1 otherwise).
/// Throws NegativePerturbation if some x_j < 0.
std::vector<ScanPoint> perturbation_scan(const CycleFunction& v, std::span<const double> eps,
                                         bool require_first_mode = true);

struct DeficitSearchResult {
  double start_deficit;
  double deficit;
  std::vector<double> argmin;
  long iterations;
};

/// Projected gradient descent on D(x) - (2 lambda_n / 3) <(x-1)^2(x+2)> over
/// x >= 0, <x^2> = 1, starting from `start`.
DeficitSearchResult minimize_cubic_deficit(const CycleFunction& start,
                                           const OptimizerConfig& cfg = {}, int max_iters = 2000);

}  // namespace cyclelsi
