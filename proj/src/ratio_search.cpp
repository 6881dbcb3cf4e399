#include "ratio_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cyclelsi/error.hpp"
#include "cyclelsi/summation.hpp"

namespace cyclelsi::detail {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e4;
constexpr int kFlatLimit = 50;
constexpr long kHistoryStride = 50;

double mean_of(std::span<const double> x, auto&& fn) {
  return compensated_mean(x.size(), [&](std::size_t i) { return fn(i); });
}

double mean_square(std::span<const double> x) {
  return mean_of(x, [&](std::size_t i) { return x[i] * x[i]; });
}

bool normalize(std::span<double> x) {
  const double norm = std::sqrt(mean_square(x));
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (double& v : x) v /= norm;
  return true;
}

void denominator_gradient(Denominator d, std::span<const double> x, std::span<double> out) {
  switch (d) {
    case Denominator::EntropyOfSquare: {
      const double m = mean_square(x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] == 0.0 ? 0.0 : 2.0 * x[i] * std::log(x[i] * x[i] / m);
      }
      return;
    }
    case Denominator::Cubic:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = 3.0 * (x[i] * x[i] - 1.0);
      return;
  }
}

struct RestartOutcome {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<double> x;
  bool converged = false;
  long iterations = 0;
  std::vector<std::pair<long, double>> history;
};

class Searcher {
 public:
  Searcher(const RatioProblem& problem, const OptimizerConfig& cfg)
      : p_(problem), cfg_(cfg), grad_(problem.dim), egrad_(problem.dim), dgrad_(problem.dim),
        trial_(problem.dim), trial_y_(problem.dim), prev_x_(problem.dim), prev_g_(problem.dim) {}

  double ratio(std::span<const double> x) const {
    const double den = denominator_value(p_.denominator, x);
    if (!(den >= cfg_.entropy_floor)) return std::numeric_limits<double>::infinity();
    return p_.energy(x) / den;
  }

  RestartOutcome run(std::vector<double> x, Rng& rng) {
    RestartOutcome out;
    make_feasible(x, rng);
    double r = ratio(x);
    if (!std::isfinite(r)) {
      out.x = std::move(x);
      return out;
    }
    const bool square = cfg_.projection == Projection::SquareReparam;
    std::vector<double> y(x.size());
    if (square) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::sqrt(x[i]);
    }

    double step = cfg_.step_init;
    int flat = 0;
    long it = 0;
    for (; it < cfg_.max_iters; ++it) {
      if (cfg_.record_history && it % kHistoryStride == 0) out.history.emplace_back(it, r);
      gradient(x, r);
      if (square) {
        for (std::size_t i = 0; i < x.size(); ++i) grad_[i] *= 2.0 * y[i];
      } else {
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (x[i] <= 0.0 && grad_[i] > 0.0) grad_[i] = 0.0;
        }
      }
      const double pg = std::sqrt(mean_square(grad_));
      if (pg <= cfg_.grad_tol * std::max(1.0, std::abs(r))) {
        out.converged = true;
        break;
      }
      // Barzilai-Borwein trial step from the previous move.
      const std::span<const double> coords = square ? std::span<const double>(y) : x;
      if (it > 0) {
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double ds = coords[i] - prev_x_[i];
          ss += ds * ds;
          sy += ds * (grad_[i] - prev_g_[i]);
        }
        if (sy > 0.0) step = std::clamp(ss / sy, 1e3 * kMinStep, kMaxStep);
      }
      std::copy(coords.begin(), coords.end(), prev_x_.begin());
      std::copy(grad_.begin(), grad_.end(), prev_g_.begin());

      bool accepted = false;
      double s = step;
      double r_trial = r;
      while (s >= kMinStep) {
        double slope = 0.0;
        if (square) {
          for (std::size_t i = 0; i < x.size(); ++i) {
            trial_y_[i] = y[i] - s * grad_[i];
            trial_[i] = trial_y_[i] * trial_y_[i];
          }
          slope = -s * mean_square(grad_);
        } else {
          for (std::size_t i = 0; i < x.size(); ++i) trial_[i] = std::max(x[i] - s * grad_[i], 0.0);
          slope = mean_of(x, [&](std::size_t i) { return grad_[i] * (trial_[i] - x[i]); });
        }
        if (normalize(trial_)) {
          r_trial = ratio(trial_);
          if (r_trial <= r + kArmijo * slope) {
            accepted = true;
            break;
          }
        }
        s *= cfg_.armijo_shrink;
      }
      if (!accepted) {
        // No representable descent step: stationary up to rounding.
        out.converged = true;
        break;
      }
      flat = (r - r_trial <= 1e-15 * std::abs(r)) ? flat + 1 : 0;
      x.swap(trial_);
      if (square) {
        // Keep x = y^2 with <x^2> = 1.
        const double scale = std::sqrt(std::sqrt(mean_of(trial_y_, [&](std::size_t i) {
          return trial_y_[i] * trial_y_[i] * trial_y_[i] * trial_y_[i];
        })));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = trial_y_[i] / scale;
      }
      r = r_trial;
      step = std::min(s / cfg_.armijo_shrink, kMaxStep);
      if (flat >= kFlatLimit) {
        out.converged = true;
        ++it;
        break;
      }
    }
    out.iterations = it;
    out.ratio = r;
    out.x = std::move(x);
    if (cfg_.record_history) out.history.emplace_back(it, r);
    return out;
  }

 private:
  void make_feasible(std::vector<double>& x, Rng& rng) const {
    for (double& v : x) v = std::max(v, 0.0);
    for (int attempt = 0; attempt < 32; ++attempt) {
      if (normalize(x) && std::isfinite(ratio(x))) return;
      // Too close to the excluded constant point (or zero): add a bump.
      x[rng.index(x.size())] += 0.5 + attempt;
    }
  }

  // Riemannian gradient on the sphere <x^2> = 1, in the normalised inner product.
  void gradient(std::span<const double> x, double r) {
    p_.energy_gradient(x, egrad_);
    denominator_gradient(p_.denominator, x, dgrad_);
    const double den = denominator_value(p_.denominator, x);
    for (std::size_t i = 0; i < x.size(); ++i) grad_[i] = (egrad_[i] - r * dgrad_[i]) / den;
    const double along = mean_of(x, [&](std::size_t i) { return grad_[i] * x[i]; });
    for (std::size_t i = 0; i < x.size(); ++i) grad_[i] -= along * x[i];
  }

  const RatioProblem& p_;
  const OptimizerConfig& cfg_;
  std::vector<double> grad_;
  std::vector<double> egrad_;
  std::vector<double> dgrad_;
  std::vector<double> trial_;
  std::vector<double> trial_y_;
  std::vector<double> prev_x_;
  std::vector<double> prev_g_;
};

}  // namespace

double denominator_value(Denominator d, std::span<const double> x) {
  switch (d) {
    case Denominator::EntropyOfSquare: return entropy_of_square(x);
    case Denominator::Cubic: return cubic_nonlinearity(x);
  }
  return 0.0;
}

RatioMinResult minimize_ratio(const RatioProblem& problem, const Initializer& init,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<RestartOutcome> outcomes(restarts);

  auto work = [&](std::size_t r) {
    Rng rng = Rng::stream(cfg.seed, r);
    std::vector<double> x0 = init(static_cast<int>(r), rng);
    Searcher searcher(problem, cfg);
    outcomes[r] = searcher.run(std::move(x0), rng);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, cfg.restarts));
  if (threads == 1) {
    for (std::size_t r = 0; r < restarts; ++r) work(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < restarts; r = next++) work(r);
      });
    }
  }

  // Deterministic fold in restart order; ties keep the earlier restart.
  RatioMinResult result;
  result.cap = problem.cap;
  result.interior_value = std::numeric_limits<double>::infinity();
  result.restarts_used = cfg.restarts;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto& o = outcomes[r];
    result.iterations += o.iterations;
    if (o.ratio < result.interior_value) {
      result.interior_value = o.ratio;
      result.best_restart = static_cast<int>(r);
    }
  }
  if (result.best_restart >= 0) {
    auto& best = outcomes[static_cast<std::size_t>(result.best_restart)];
    result.argmin = std::move(best.x);
    result.converged = best.converged;
    result.history = std::move(best.history);
  }
  result.value = std::min(result.interior_value, result.cap);
  result.reached_cap = std::abs(result.interior_value - result.cap) <= 1e-6 * std::max(1.0, result.cap);
  result.converged = result.converged || result.reached_cap;
  return result;
}

}  // namespace cyclelsi::detail
