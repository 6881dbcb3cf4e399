#include "cyclelsi/random.hpp"

#include <algorithm>
#include <vector>

#include "cyclelsi/error.hpp"
#include "cyclelsi/spectral.hpp"

namespace cyclelsi {

namespace {

void normalize_l2(std::vector<double>& x, double norm) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  const double current = std::sqrt(acc / static_cast<double>(x.size()));
  for (double& v : x) v *= norm / current;
}

}  // namespace

CycleFunction random_admissible_function(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  switch (rng.index(5)) {
    case 0:
      for (double& v : x) v = rng.uniform();
      break;
    case 1: {
      const double amp = std::pow(10.0, rng.uniform(-3.0, 0.0));
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        x[j] = 1.0 + amp * (std::cos(a + phase) + 0.3 * rng.uniform(-1.0, 1.0));
      }
      break;
    }
    case 2:
      for (double& v : x) v = rng.uniform() < 0.4 ? 0.0 : rng.uniform();
      break;
    case 3:
      for (double& v : x) v = std::exp(2.0 * rng.normal());
      break;
    default: {
      const double amp = std::pow(10.0, rng.uniform(-2.0, 0.0));
      for (double& v : x) v = 1.0 + amp * rng.uniform(-1.0, 1.0);
      break;
    }
  }
  for (double& v : x) v = std::max(v, 0.0);
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[rng.index(n)] = 1.0;
  normalize_l2(x, 1.0);
  return CycleFunction(std::move(x));
}

CycleFunction random_first_mode(std::size_t n, Rng& rng, double norm) {
  if (n < 3) throw Error(ErrorCode::UnsupportedN, "V1 needs n >= 3");
  const double p = rng.normal();
  const double q = rng.normal();
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    v[j] = p * std::cos(a) + q * std::sin(a);
  }
  normalize_l2(v, norm);
  return CycleFunction(std::move(v));
}

CycleFunction random_high_frequency(std::size_t n, Rng& rng, double norm) {
  if (n < 4) throw Error(ErrorCode::UnsupportedN, "high-frequency subspace needs n >= 4");
  std::vector<double> raw(n);
  for (double& v : raw) v = rng.normal();
  const CycleFunction x(raw);
  const CycleFunction low = project_first_mode(x);
  const double mean = average(x);
  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = raw[j] - mean - low[j];
  // A second pass removes what rounding left behind.
  const CycleFunction once(z);
  const CycleFunction low2 = project_first_mode(once);
  const double mean2 = average(once);
  for (std::size_t j = 0; j < n; ++j) z[j] -= mean2 + low2[j];
  normalize_l2(z, norm);
  return CycleFunction(std::move(z));
}

}  // namespace cyclelsi
