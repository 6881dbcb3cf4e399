#include "cyclelsi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/inequalities.hpp"
#include "cyclelsi/spectral.hpp"
#include "cyclelsi/summation.hpp"
#include "ratio_search.hpp"

namespace cyclelsi {

namespace {

double mean_square(std::span<const double> x) {
  return compensated_mean(x.size(), [&](std::size_t i) { return x[i] * x[i]; });
}

// Starting points: noisy constants, low-mode ripples of several amplitudes,
// single spikes and two-level steps, cycled by restart index.
std::vector<double> cycle_start(std::size_t n, int restart, Rng& rng) {
  std::vector<double> x(n);
  const double tau = 2.0 * std::numbers::pi / static_cast<double>(n);
  switch (restart % 5) {
    case 0: {
      const double amp = rng.uniform(0.05, 0.9);
      for (double& v : x) v = 1.0 + amp * rng.uniform(-1.0, 1.0);
      break;
    }
    case 1: {
      static constexpr double kAmps[] = {0.02, 0.1, 0.3, 0.9};
      const double amp = kAmps[(restart / 5) % 4];
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t j = 0; j < n; ++j) x[j] = 1.0 + amp * std::cos(tau * j + phase);
      break;
    }
    case 2: {
      const double base = rng.uniform(0.0, 0.5);
      for (double& v : x) v = base;
      x[rng.index(n)] = 1.0;
      break;
    }
    case 3: {
      const std::size_t len = 1 + rng.index(n - 1);
      const std::size_t offset = rng.index(n);
      const double low = rng.uniform(0.0, 1.0);
      for (std::size_t j = 0; j < n; ++j) x[(offset + j) % n] = j < len ? 1.0 : low;
      break;
    }
    default:
      for (double& v : x) v = rng.uniform();
      break;
  }
  return x;
}

void laplacian_times(std::span<const double> x, std::span<double> out, double scale) {
  apply_laplacian(x, out);
  for (double& v : out) v *= scale;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
  if (!(step_init > 0.0)) throw Error(ErrorCode::InvalidArgument, "step_init must be > 0");
  if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "armijo_shrink must lie in (0, 1)");
  }
  if (!(grad_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "grad_tol must be > 0");
  if (!(entropy_floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "entropy_floor must be > 0");
}

double log_sobolev_ratio(std::span<const double> f) {
  return dirichlet_form(f) / entropy_of_square(f);
}

double cubic_ratio(std::span<const double> x) {
  return mean_squared_increment(x) / cubic_nonlinearity(x);
}

RatioMinResult estimate_alpha(std::size_t n, const OptimizerConfig& cfg) {
  if (n < 2) throw Error(ErrorCode::UnsupportedN, "estimate_alpha needs n >= 2");
  detail::RatioProblem problem;
  problem.dim = n;
  problem.energy = [](std::span<const double> x) { return dirichlet_form(x); };
  problem.energy_gradient = [](std::span<const double> x, std::span<double> out) {
    laplacian_times(x, out, 1.0);
  };
  problem.denominator = detail::Denominator::EntropyOfSquare;
  problem.cap = 0.5 * spectral_gap(n);
  return detail::minimize_ratio(
      problem, [n](int r, Rng& rng) { return cycle_start(n, r, rng); }, cfg);
}

RatioMinResult estimate_cubic_constant(std::size_t n, const OptimizerConfig& cfg) {
  if (n < 4) throw Error(ErrorCode::UnsupportedN, "estimate_cubic_constant needs n >= 4");
  detail::RatioProblem problem;
  problem.dim = n;
  problem.energy = [](std::span<const double> x) { return mean_squared_increment(x); };
  problem.energy_gradient = [](std::span<const double> x, std::span<double> out) {
    laplacian_times(x, out, 2.0);
  };
  problem.denominator = detail::Denominator::Cubic;
  problem.cap = 2.0 * spectral_gap(n) / 3.0;
  return detail::minimize_ratio(
      problem, [n](int r, Rng& rng) { return cycle_start(n, r, rng); }, cfg);
}

CycleFunction alpha_ratio_gradient(const CycleFunction& f, double entropy_floor) {
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] < 0.0) {
      throw Error(ErrorCode::NegativeInput, "gradient needs f >= 0 (site " + std::to_string(i) + ")");
    }
  }
  const double ent = entropy_of_square(f.values());
  if (ent < entropy_floor) {
    throw Error(ErrorCode::DegenerateEntropy, "Ent(f^2) = " + std::to_string(ent));
  }
  const double ratio = dirichlet_form(f) / ent;
  const double m = mean_square(f.values());
  const CycleFunction lf = apply_laplacian(f);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dent = f[i] == 0.0 ? 0.0 : 2.0 * f[i] * std::log(f[i] * f[i] / m);
    g[i] = inv_n * (lf[i] - ratio * dent) / ent;
  }
  return CycleFunction(std::move(g));
}

std::vector<ScanPoint> perturbation_scan(const CycleFunction& v, std::span<const double> eps,
                                         bool require_first_mode) {
  const std::size_t n = v.size();
  if (n < 4) throw Error(ErrorCode::UnsupportedN, "perturbation_scan needs n >= 4");
  const double vnorm = std::sqrt(mean_square(v.values()));
  if (vnorm == 0.0) throw Error(ErrorCode::InvalidArgument, "direction must be nonzero");
  if (require_first_mode) {
    const double residual = std::sqrt(mean_square((v - project_first_mode(v)).values()));
    if (residual >= 1e-10 * std::max(1.0, vnorm)) {
      throw Error(ErrorCode::NotInV1, "scan direction is not in V1");
    }
  }
  std::vector<ScanPoint> out;
  out.reserve(eps.size());
  for (double e : eps) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = 1.0 + e * v[j];
      if (x[j] < 0.0) {
        throw Error(ErrorCode::NegativePerturbation,
                    "eps = " + std::to_string(e) + " makes site " + std::to_string(j) + " negative");
      }
    }
    const double norm = std::sqrt(mean_square(x));
    for (double& xv : x) xv /= norm;
    const double d = cubic_deficit(CycleFunction(std::move(x))).deficit;
    out.push_back({e, d, e == 0.0 ? 0.0 : d / (e * e)});
  }
  return out;
}

DeficitSearchResult minimize_cubic_deficit(const CycleFunction& start, const OptimizerConfig& cfg,
                                           int max_iters) {
  const std::size_t n = start.size();
  if (n < 4) throw Error(ErrorCode::UnsupportedN, "minimize_cubic_deficit needs n >= 4");
  const double lambda = spectral_gap(n);
  auto deficit = [lambda](std::span<const double> x) {
    return mean_squared_increment(x) - 2.0 * lambda / 3.0 * cubic_nonlinearity(x);
  };

  std::vector<double> x(start.values().begin(), start.values().end());
  for (double& v : x) v = std::max(v, 0.0);
  double norm = std::sqrt(mean_square(x));
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "start must be nonzero");
  for (double& v : x) v /= norm;

  DeficitSearchResult res{deficit(x), 0.0, {}, 0};
  double value = res.start_deficit;
  std::vector<double> g(n), trial(n), lx(n);
  double step = cfg.step_init;
  long it = 0;
  for (; it < max_iters; ++it) {
    apply_laplacian(x, lx);
    for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * lx[i] - 2.0 * lambda * (x[i] * x[i] - 1.0);
    const double along = compensated_mean(n, [&](std::size_t i) { return g[i] * x[i]; });
    for (std::size_t i = 0; i < n; ++i) {
      g[i] -= along * x[i];
      if (x[i] <= 0.0 && g[i] > 0.0) g[i] = 0.0;
    }
    if (std::sqrt(mean_square(g)) <= cfg.grad_tol) break;

    bool accepted = false;
    double s = step;
    double trial_value = value;
    while (s >= 1e-20) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(x[i] - s * g[i], 0.0);
      const double slope =
          compensated_mean(n, [&](std::size_t i) { return g[i] * (trial[i] - x[i]); });
      norm = std::sqrt(mean_square(trial));
      if (norm > 0.0) {
        for (double& v : trial) v /= norm;
        trial_value = deficit(trial);
        if (trial_value <= value + 1e-4 * slope) {
          accepted = true;
          break;
        }
      }
      s *= cfg.armijo_shrink;
    }
    if (!accepted) break;
    x.swap(trial);
    value = trial_value;
    step = std::min(s / cfg.armijo_shrink, 1e4);
  }
  res.deficit = value;
  res.argmin = std::move(x);
  res.iterations = it;
  return res;
}

}  // namespace cyclelsi
