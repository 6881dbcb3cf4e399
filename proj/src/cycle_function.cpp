#include "cyclelsi/cycle_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/summation.hpp"

namespace cyclelsi {

namespace {

constexpr double kNegativeDust = 1e-12;

// (1+u) log(1+u) - u, accurate for small |u|.
double entropy_kernel(double u) {
  if (std::abs(u) < 0.05) {
    // sum_{k>=2} (-1)^k u^k / (k (k-1))
    double term = u * u;
    double acc = 0.0;
    for (int k = 2; k < 32; ++k) {
      acc += ((k % 2 == 0) ? term : -term) / (static_cast<double>(k) * (k - 1));
      term *= u;
    }
    return acc;
  }
  return (1.0 + u) * std::log1p(u) - u;
}

double lattice_angle(std::size_t n, std::size_t k, std::size_t j) {
  const auto m = static_cast<double>((k % n) * (j % n) % n);
  return 2.0 * std::numbers::pi * m / static_cast<double>(n);
}

}  // namespace

CycleFunction::CycleFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "a cycle needs at least 2 sites, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidArgument, "non-finite value at site " + std::to_string(i));
    }
  }
}

CycleFunction CycleFunction::constant(std::size_t n, double c) {
  return CycleFunction(std::vector<double>(n, c));
}

CycleFunction CycleFunction::generate(std::size_t n,
                                      const std::function<double(std::size_t)>& fn) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = fn(j);
  return CycleFunction(std::move(v));
}

CycleFunction CycleFunction::cosine_mode(std::size_t n, std::size_t k, double amplitude,
                                         double phase) {
  return generate(n, [&](std::size_t j) {
    return amplitude * std::cos(lattice_angle(n, k, j) + phase);
  });
}

CycleFunction CycleFunction::sine_mode(std::size_t n, std::size_t k, double amplitude) {
  return generate(n, [&](std::size_t j) { return amplitude * std::sin(lattice_angle(n, k, j)); });
}

double CycleFunction::at(std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  std::ptrdiff_t r = i % n;
  if (r < 0) r += n;
  return values_[static_cast<std::size_t>(r)];
}

namespace {

template <class Op>
CycleFunction zip(const CycleFunction& a, const CycleFunction& b, Op op) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "cycle functions have different lengths");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return CycleFunction(std::move(out));
}

}  // namespace

CycleFunction operator+(const CycleFunction& a, const CycleFunction& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

CycleFunction operator-(const CycleFunction& a, const CycleFunction& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

CycleFunction operator*(double s, const CycleFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& x : out) x *= s;
  return CycleFunction(std::move(out));
}

CycleFunction abs(const CycleFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& x : out) x = std::abs(x);
  return CycleFunction(std::move(out));
}

double average(std::span<const double> f) {
  return compensated_mean(f.size(), [&](std::size_t i) { return f[i]; });
}

double variance(std::span<const double> f) {
  const double m = average(f);
  const double v = compensated_mean(f.size(), [&](std::size_t i) {
    const double d = f[i] - m;
    return d * d;
  });
  return v < 0.0 ? 0.0 : v;
}

double entropy(std::span<const double> g) {
  const std::size_t n = g.size();
  std::vector<double> clean(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] < -kNegativeDust) {
      throw Error(ErrorCode::NegativeInput,
                  "entropy needs g >= 0; site " + std::to_string(i) + " is " + std::to_string(g[i]));
    }
    clean[i] = g[i] < 0.0 ? 0.0 : g[i];
  }
  const double m = average(clean);
  if (m == 0.0) return 0.0;
  // <g log(g/m) - g + m>: every summand is >= 0, so near-constant inputs
  // do not lose their entropy to cancellation.
  const double e = compensated_mean(n, [&](std::size_t i) {
    if (clean[i] == 0.0) return m;  // 0 log 0 = 0
    return m * entropy_kernel(clean[i] / m - 1.0);
  });
  return e < 0.0 ? 0.0 : e;
}

double entropy_of_square(std::span<const double> f) {
  const std::size_t n = f.size();
  const double m = compensated_mean(n, [&](std::size_t i) { return f[i] * f[i]; });
  if (m == 0.0) return 0.0;
  const double e = compensated_mean(n, [&](std::size_t i) {
    const double g = f[i] * f[i];
    if (g == 0.0) return m;
    return m * entropy_kernel(g / m - 1.0);
  });
  return e < 0.0 ? 0.0 : e;
}

double mean_squared_increment(std::span<const double> x) {
  const std::size_t n = x.size();
  return compensated_mean(n, [&](std::size_t i) {
    const double d = x[i] - x[(i + 1) % n];
    return d * d;
  });
}

double dirichlet_form(std::span<const double> f) { return 0.5 * mean_squared_increment(f); }

void apply_laplacian(std::span<const double> f, std::span<double> out) {
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = 2.0 * f[j] - f[(j + n - 1) % n] - f[(j + 1) % n];
  }
}

CycleFunction apply_laplacian(const CycleFunction& f) {
  std::vector<double> out(f.size());
  apply_laplacian(f.values(), out);
  return CycleFunction(std::move(out));
}

double cubic_nonlinearity(std::span<const double> x) {
  return compensated_mean(x.size(), [&](std::size_t i) {
    const double d = x[i] - 1.0;
    return d * d * (x[i] + 2.0);
  });
}

double lp_norm(std::span<const double> f, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp_norm needs p >= 1");
  double scale = 0.0;
  for (double x : f) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  const double m = compensated_mean(f.size(), [&](std::size_t i) {
    return std::pow(std::abs(f[i]) / scale, p);
  });
  return scale * std::pow(m, 1.0 / p);
}

double inner(std::span<const double> f, std::span<const double> g) {
  return compensated_mean(f.size(), [&](std::size_t i) { return f[i] * g[i]; });
}

double average(const CycleFunction& f) { return average(f.values()); }
double variance(const CycleFunction& f) { return variance(f.values()); }
double entropy(const CycleFunction& g) { return entropy(g.values()); }
double dirichlet_form(const CycleFunction& f) { return dirichlet_form(f.values()); }
double mean_squared_increment(const CycleFunction& x) { return mean_squared_increment(x.values()); }
double cubic_nonlinearity(const CycleFunction& x) { return cubic_nonlinearity(x.values()); }
double lp_norm(const CycleFunction& f, double p) { return lp_norm(f.values(), p); }

FunctionalReport functional_report(const CycleFunction& f) {
  FunctionalReport r{};
  r.average = average(f);
  r.variance = variance(f);
  try {
    r.entropy = entropy(f);
    r.entropy_defined = true;
  } catch (const Error&) {
    r.entropy = std::nan("");
    r.entropy_defined = false;
  }
  r.d_quantity = mean_squared_increment(f);
  r.dirichlet = 0.5 * r.d_quantity;
  return r;
}

}  // namespace cyclelsi
