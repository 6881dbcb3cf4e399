#include "cyclelsi/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/spectral.hpp"
#include "cyclelsi/summation.hpp"

namespace cyclelsi {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double constant_part(double a) { return (1.0 - a) * (1.0 - a) * (1.0 + 2.0 * a); }

double mean_square(std::span<const double> x) {
  return compensated_mean(x.size(), [&](std::size_t i) { return x[i] * x[i]; });
}

double mean_cube(std::span<const double> x) {
  return compensated_mean(x.size(), [&](std::size_t i) { return x[i] * x[i] * x[i]; });
}

double sup_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

void require_admissible(const CycleFunction& x, const char* what) {
  const std::size_t n = x.size();
  if (n < 4) {
    throw Error(ErrorCode::UnsupportedN,
                std::string(what) + " needs n >= 4, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < -1e-12) {
      throw Error(ErrorCode::NegativeEntries,
                  std::string(what) + ": site " + std::to_string(i) + " is negative");
    }
  }
  const double norm = mean_square(x.values());
  if (std::abs(norm - 1.0) >= 1e-10) {
    throw Error(ErrorCode::NotNormalized,
                std::string(what) + ": <x^2> = " + std::to_string(norm) + ", expected 1");
  }
}

}  // namespace

void ScalarTriple::validate() const {
  if (a < 0.0 || r < 0.0 || t < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "scalar triple entries must be nonnegative");
  }
  if (std::abs(a * a + r * r + t * t - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "scalar triple must lie on the unit sphere");
  }
}

double scalar_deficit(ScalarBound which, const ScalarTriple& p) {
  p.validate();
  const double base = constant_part(p.a);
  const double r = p.r;
  const double t = p.t;
  switch (which) {
    case ScalarBound::General:
      return base + 4.0 * t * t - (3.0 / kSqrt2 * r * r * t + 3.0 * kSqrt2 * r * t * t);
    case ScalarBound::FiveCycle:
      return base + 2.5 * t * t - 3.0 / kSqrt2 * (r * r * t + r * t * t);
    case ScalarBound::FourCycle:
      return base + 3.0 * t * t - 3.0 * r * r * t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scalar bound");
}

ScalarScan scan_scalar_bounds(std::size_t target_points, std::size_t edge_points) {
  ScalarScan scan{0, {{{ScalarBound::General, INFINITY, {1, 0, 0}},
                       {ScalarBound::FiveCycle, INFINITY, {1, 0, 0}},
                       {ScalarBound::FourCycle, INFINITY, {1, 0, 0}}}}};
  auto visit = [&scan](double a, double r, double t) {
    ++scan.points;
    for (auto& e : scan.entries) {
      const double d = scalar_deficit(e.bound, {a, r, t});
      if (d < e.worst) e.worst = d, e.at = {a, r, t};
    }
  };
  // One eighth of a Fibonacci sphere with 8 * target_points points; only the
  // upper hemisphere is walked.
  const auto total = static_cast<double>(8 * target_points);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0;; ++i) {
    const double t = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / total;
    if (t < 0.0) break;
    const double rad = std::sqrt(1.0 - t * t);
    const double th = golden_angle * static_cast<double>(i);
    const double a = rad * std::cos(th), r = rad * std::sin(th);
    if (a >= 0.0 && r >= 0.0) visit(a, r, t);
  }
  const double quarter = 0.5 * std::numbers::pi;
  for (std::size_t i = 0; i <= edge_points; ++i) {
    const double phi = quarter * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(edge_points, 1));
    const double c = std::cos(phi), s = std::sin(phi);
    visit(c, s, 0.0);
    visit(c, 0.0, s);
    visit(0.0, c, s);
  }
  return scan;
}

double scalar_discriminant(ScalarBound which, double s) {
  if (s < 0.0) throw Error(ErrorCode::InvalidArgument, "discriminant needs s >= 0");
  const double q = (s * s + 1.0) * (s * s + 1.0);
  switch (which) {
    case ScalarBound::General:
      return 4.5 * s * s * (s + 2.0) * (s + 2.0) - 12.0 * q;
    case ScalarBound::FiveCycle:
      return 4.5 * s * s * (s + 1.0) * (s + 1.0) - 7.5 * q;
    case ScalarBound::FourCycle:
      return 9.0 * s * s * s * s - 9.0 * q;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scalar bound");
}

double normalized_discriminant(ScalarBound which, double s) {
  if (s < 0.0) throw Error(ErrorCode::InvalidArgument, "discriminant needs s >= 0");
  const double g = s * s + 1.0;
  switch (which) {
    case ScalarBound::General: {
      const double ratio = s * (s + 2.0) / g;
      return 4.5 * ratio * ratio - 12.0;
    }
    case ScalarBound::FiveCycle: {
      const double ratio = s * (s + 1.0) / g;
      return 4.5 * ratio * ratio - 7.5;
    }
    case ScalarBound::FourCycle: {
      const double ratio = s * s / g;
      return 9.0 * ratio * ratio - 9.0;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scalar bound");
}

std::pair<double, double> extremal_identity_residuals(double s) {
  const double phi = kGoldenRatio;
  const double sigma = kSilverRatio;
  const double g1 = phi * (s * s + 1.0) - s * (s + 2.0) - (s - phi) * (s - phi) / phi;
  const double g2 =
      0.5 * sigma * (s * s + 1.0) - s * (s + 1.0) - (s - sigma) * (s - sigma) / (2.0 * sigma);
  return {g1, g2};
}

double cubic_majorant(double t) {
  const double d = t - 1.0;
  return 2.0 * d + 3.0 * d * d + (2.0 / 3.0) * d * d * d;
}

double majorant_deficit(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "majorant needs t > 0");
  const double d = t - 1.0;
  const double log_t = std::abs(d) < 0.5 ? std::log1p(d) : std::log(t);
  return cubic_majorant(t) - 2.0 * t * t * log_t;
}

double majorant_fourth_derivative_residual(double t, double h) {
  if (!(h > 0.0) || !(t - 4.0 * h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "stencil must stay inside (0, inf)");
  }
  auto stencil = [t](double step) {
    const double num = majorant_deficit(t - 2.0 * step) - 4.0 * majorant_deficit(t - step) +
                       6.0 * majorant_deficit(t) - 4.0 * majorant_deficit(t + step) +
                       majorant_deficit(t + 2.0 * step);
    return num / (step * step * step * step);
  };
  // Leading error of the stencil is (h^2/6) H^(6); one Richardson step with
  // the doubled step removes it. Halving instead would amplify rounding.
  const double extrapolated = (4.0 * stencil(h) - stencil(2.0 * h)) / 3.0;
  const double exact = 4.0 / (t * t);
  return std::abs(extrapolated - exact) / exact;
}

double majorant_identity_residual(double t) {
  const double d = t - 1.0;
  return cubic_majorant(t) - ((2.0 / 3.0) * d * d * (t + 2.0) + (t * t - 1.0));
}

DeficitReport cubic_deficit(const CycleFunction& x) {
  require_admissible(x, "cubic_deficit");
  const double lhs = 2.0 * spectral_gap(x.size()) / 3.0 * cubic_nonlinearity(x);
  const double rhs = mean_squared_increment(x);
  return {lhs, rhs, rhs - lhs};
}

double split_deficit(const CycleFunction& x) {
  if (x.size() < 4) throw Error(ErrorCode::UnsupportedN, "split_deficit needs n >= 4");
  const double norm = mean_square(x.values());
  if (std::abs(norm - 1.0) >= 1e-10) {
    throw Error(ErrorCode::NotNormalized, "split_deficit needs <x^2> = 1");
  }
  const FrequencySplit split = decompose(x);
  const CycleFunction w = split.low + split.high;
  const double cube = mean_cube(w.values());
  const double a = split.mean;
  return spectral_gap(x.size()) *
         (split.q_value - (2.0 / 3.0) * (-constant_part(a) + cube));
}

EntropyBound entropy_vs_cubic(const CycleFunction& x) {
  require_admissible(x, "entropy_vs_cubic");
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  return {entropy(sq), (2.0 / 3.0) * cubic_nonlinearity(x)};
}

FourCycleReport four_cycle_cross_terms(double p, double q, double c) {
  const CycleFunction v({p, q, -p, -q});
  const CycleFunction z({c, -c, c, -c});
  const CycleFunction mode =
      CycleFunction::cosine_mode(4, 1, p) + CycleFunction::sine_mode(4, 1, q);

  FourCycleReport rep{};
  rep.r_squared = mean_square(v.values());
  rep.r_squared_formula = 0.5 * (p * p + q * q);
  rep.t = std::sqrt(mean_square(z.values()));
  rep.v_cube = mean_cube(v.values());
  rep.v_z_squared = compensated_mean(4, [&](std::size_t i) { return v[i] * z[i] * z[i]; });
  rep.z_cube = mean_cube(z.values());
  rep.v_squared_z = compensated_mean(4, [&](std::size_t i) { return v[i] * v[i] * z[i]; });
  rep.v_squared_z_formula = 0.5 * c * (p * p - q * q);
  rep.mode_residual = sup_norm((v - mode).values());
  rep.bound_slack = rep.t * rep.r_squared - std::abs(rep.v_squared_z);
  return rep;
}

FiveCycleReport five_cycle_cube(std::complex<double> a, std::complex<double> b) {
  constexpr std::size_t n = 5;
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle1 = 2.0 * std::numbers::pi * static_cast<double>(j % n) / n;
    const double angle2 = 2.0 * std::numbers::pi * static_cast<double>((2 * j) % n) / n;
    const std::complex<double> chi1(std::cos(angle1), std::sin(angle1));
    const std::complex<double> chi2(std::cos(angle2), std::sin(angle2));
    w[j] = 2.0 * (a * chi1).real() + 2.0 * (b * chi2).real();
  }
  FiveCycleReport rep{};
  rep.direct = mean_cube(w);
  rep.closed_form = 6.0 * (a * a * std::conj(b) + a * b * b).real();
  rep.residual = std::abs(rep.direct - rep.closed_form);
  const double r = kSqrt2 * std::abs(a);
  const double t = kSqrt2 * std::abs(b);
  rep.bound = 3.0 / kSqrt2 * (r * r * t + r * t * t);
  return rep;
}

double GeneralCaseReport::worst_slack() const {
  return std::min({v_squared_z_bound - v_squared_z, v_z_squared_bound - v_z_squared,
                   z_cube_bound - z_cube, z_cube_chain_bound - z_cube_bound,
                   cube_total_bound - cube_total});
}

GeneralCaseReport general_cross_term_bounds(const CycleFunction& v, const CycleFunction& z) {
  const std::size_t n = v.size();
  if (z.size() != n) throw Error(ErrorCode::InvalidArgument, "v and z differ in length");
  if (n < 6) {
    throw Error(ErrorCode::UnsupportedN, "general cross-term bounds need n >= 6");
  }
  const double r = std::sqrt(mean_square(v.values()));
  const double t = std::sqrt(mean_square(z.values()));
  const Tolerances tol;
  {
    const double residual = std::sqrt(mean_square((v - project_first_mode(v)).values()));
    if (residual >= tol.subspace_residual * std::max(1.0, r)) {
      throw Error(ErrorCode::NotInV1, "v is not in V1 (residual " + std::to_string(residual) + ")");
    }
  }
  const BoundCheck sup_check = sup_norm_bound_check(z, tol);  // throws NotHighFrequency

  GeneralCaseReport rep{};
  rep.r = r;
  rep.t = t;
  rep.q = sup_check.lhs;
  rep.sigma = sup_norm_constant(n);
  rep.v_squared_z =
      std::abs(compensated_mean(n, [&](std::size_t i) { return v[i] * v[i] * z[i]; }));
  rep.v_squared_z_bound = r * r * t / kSqrt2;
  rep.v_z_squared =
      std::abs(compensated_mean(n, [&](std::size_t i) { return v[i] * z[i] * z[i]; }));
  rep.v_z_squared_bound = kSqrt2 * r * t * t;
  rep.z_cube = std::abs(mean_cube(z.values()));
  rep.z_cube_bound = sup_norm(z.values()) * t * t;
  const double q_clamped = std::max(rep.q, 0.0);
  rep.z_cube_chain_bound = std::sqrt(rep.sigma) * std::sqrt(q_clamped) * t * t;
  rep.cube_total = mean_cube((v + z).values());
  rep.cube_total_bound =
      3.0 / kSqrt2 * r * r * t + 3.0 * kSqrt2 * r * t * t + rep.z_cube_chain_bound;
  return rep;
}

double final_q_deficit(double q, double t, std::size_t n) {
  if (n < 6) throw Error(ErrorCode::UnsupportedN, "final Q inequality needs n >= 6");
  if (t < 0.0 || t > 1.0) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, 1]");
  if (q < 0.0 || q < l2_coercivity_constant(n) * t * t - 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "Q must satisfy Q >= kappa_n t^2");
  }
  const double sigma = sup_norm_constant(n);
  return q - (8.0 / 3.0) * t * t - (2.0 / 3.0) * std::sqrt(sigma) * std::sqrt(q) * t * t;
}

}  // namespace cyclelsi
