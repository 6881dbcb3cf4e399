#include "cyclelsi/products.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/spectral.hpp"
#include "cyclelsi/summation.hpp"
#include "ratio_search.hpp"

namespace cyclelsi {

ProductSpace::ProductSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::InvalidArgument, "product needs at least one factor");
  for (const auto& f : factors_) {
    if (f.n < 2) throw Error(ErrorCode::InvalidArgument, "factor length must be >= 2");
    if (!(f.weight > 0.0) || !std::isfinite(f.weight)) {
      throw Error(ErrorCode::InvalidArgument, "factor weight must be positive and finite");
    }
    if (states_ > std::numeric_limits<std::size_t>::max() / f.n) {
      throw Error(ErrorCode::StateSpaceTooLarge, "state count overflows");
    }
    states_ *= f.n;
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t l = factors_.size() - 1; l > 0; --l) strides_[l - 1] = strides_[l] * factors_[l].n;
}

bool ProductSpace::within_hypothesis() const noexcept {
  for (const auto& f : factors_) {
    if (f.n == 3) return false;
  }
  return true;
}

ProductFunction::ProductFunction(ProductSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.state_count()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(space_.state_count()) +
                                                " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  }
}

double ProductFunction::at(std::span<const std::size_t> index) const {
  if (index.size() != space_.rank()) throw Error(ErrorCode::InvalidArgument, "index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t l = 0; l < index.size(); ++l) {
    flat += (index[l] % space_.factors()[l].n) * space_.stride(l);
  }
  return values_[flat];
}

namespace {

// Site reached by one step forward along `axis`.
std::size_t step_forward(const ProductSpace& space, std::size_t s, std::size_t axis) {
  const std::size_t stride = space.stride(axis);
  const std::size_t n = space.factors()[axis].n;
  const std::size_t coord = (s / stride) % n;
  return coord + 1 == n ? s - coord * stride : s + stride;
}

std::size_t step_backward(const ProductSpace& space, std::size_t s, std::size_t axis) {
  const std::size_t stride = space.stride(axis);
  const std::size_t n = space.factors()[axis].n;
  const std::size_t coord = (s / stride) % n;
  return coord == 0 ? s + (n - 1) * stride : s - stride;
}

// sum_l c_l (L_l F), the product generator scaled by the state count.
void weighted_laplacian(const ProductSpace& space, std::span<const double> x, std::span<double> out) {
  for (std::size_t s = 0; s < x.size(); ++s) {
    double acc = 0.0;
    for (std::size_t l = 0; l < space.rank(); ++l) {
      acc += space.factors()[l].weight *
             (2.0 * x[s] - x[step_forward(space, s, l)] - x[step_backward(space, s, l)]);
    }
    out[s] = acc;
  }
}

std::vector<double> product_start(const ProductSpace& space, int restart, Rng& rng) {
  const std::size_t total = space.state_count();
  std::vector<double> x(total);
  switch (restart % 4) {
    case 0: {
      const double amp = rng.uniform(0.05, 0.9);
      for (double& v : x) v = 1.0 + amp * rng.uniform(-1.0, 1.0);
      break;
    }
    case 1: {
      // Ripple along the factor with the smallest weighted gap.
      std::size_t axis = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < space.rank(); ++l) {
        const double g = space.factors()[l].weight * spectral_gap(space.factors()[l].n);
        if (g < best) {
          best = g;
          axis = l;
        }
      }
      static constexpr double kAmps[] = {0.02, 0.1, 0.3, 0.9};
      const double amp = kAmps[(restart / 4) % 4];
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const std::size_t n = space.factors()[axis].n;
      const double tau = 2.0 * std::numbers::pi / static_cast<double>(n);
      for (std::size_t s = 0; s < total; ++s) {
        const std::size_t coord = (s / space.stride(axis)) % n;
        x[s] = 1.0 + amp * std::cos(tau * coord + phase);
      }
      break;
    }
    case 2: {
      const double base = rng.uniform(0.0, 0.5);
      for (double& v : x) v = base;
      x[rng.index(total)] = 1.0;
      break;
    }
    default:
      for (double& v : x) v = rng.uniform();
      break;
  }
  return x;
}

}  // namespace

double product_dirichlet_form(const ProductSpace& space, std::span<const double> values) {
  if (values.size() != space.state_count()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match the product space");
  }
  double total = 0.0;
  for (std::size_t l = 0; l < space.rank(); ++l) {
    const double axis_form = 0.5 * compensated_mean(values.size(), [&](std::size_t s) {
      const double d = values[s] - values[step_forward(space, s, l)];
      return d * d;
    });
    total += space.factors()[l].weight * axis_form;
  }
  return total;
}

double product_dirichlet_form(const ProductFunction& f) {
  return product_dirichlet_form(f.space(), f.values());
}

double product_gap(const ProductSpace& space) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : space.factors()) best = std::min(best, f.weight * spectral_gap(f.n));
  return best;
}

double sharp_constant(const ProductSpace& space) {
  if (!space.within_hypothesis()) {
    throw Error(ErrorCode::UnsupportedFactor, "no closed form with a 3-cycle factor");
  }
  return 0.5 * product_gap(space);
}

ProductFunction lift_factor(const ProductSpace& space, std::size_t axis, const CycleFunction& g) {
  if (axis >= space.rank()) throw Error(ErrorCode::IndexOutOfRange, "axis out of range");
  const std::size_t n = space.factors()[axis].n;
  if (g.size() != n) throw Error(ErrorCode::InvalidArgument, "factor function has the wrong length");
  std::vector<double> values(space.state_count());
  for (std::size_t s = 0; s < values.size(); ++s) values[s] = g[(s / space.stride(axis)) % n];
  return ProductFunction(space, std::move(values));
}

RatioMinResult estimate_alpha_product(const ProductSpace& space, const OptimizerConfig& cfg,
                                      std::size_t state_limit) {
  if (space.state_count() > state_limit) {
    throw Error(ErrorCode::StateSpaceTooLarge, std::to_string(space.state_count()) +
                                                   " states exceeds the limit " +
                                                   std::to_string(state_limit));
  }
  detail::RatioProblem problem;
  problem.dim = space.state_count();
  problem.energy = [&space](std::span<const double> x) { return product_dirichlet_form(space, x); };
  problem.energy_gradient = [&space](std::span<const double> x, std::span<double> out) {
    weighted_laplacian(space, x, out);
  };
  problem.denominator = detail::Denominator::EntropyOfSquare;
  problem.cap = 0.5 * product_gap(space);
  return detail::minimize_ratio(
      problem, [&space](int r, Rng& rng) { return product_start(space, r, rng); }, cfg);
}

}  // namespace cyclelsi
