// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// Usage: acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "cyclelsi/error.hpp"
#include "cyclelsi/inequalities.hpp"
#include "cyclelsi/optimize.hpp"
#include "cyclelsi/products.hpp"
#include "cyclelsi/random.hpp"
#include "cyclelsi/semigroup.hpp"
#include "cyclelsi/spectral.hpp"

using namespace cyclelsi;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Closed-form constants against independent numerics.
Outcome constants_table() {
  double gap_err = 0.0;
  for (std::size_t n = 4; n <= 512; ++n) {
    gap_err = std::max(gap_err, std::abs(spectral_gap_numeric(n).value - spectral_gap(n)));
  }
  double sigma_err = 0.0, kappa_err = 0.0;
  for (std::size_t n = 4; n <= 2048; ++n) {
    const double s = sup_norm_constant(n);
    sigma_err = std::max(sigma_err, std::abs(sup_norm_constant_sum(n) - s) / s);
    kappa_err = std::max(kappa_err, std::abs(l2_coercivity_constant_direct(n) - l2_coercivity_constant(n)));
  }
  const bool ok = gap_err <= 1e-9 && sigma_err <= 1e-10 && kappa_err <= 1e-12;
  return {ok, fmt("max|gap-numeric| = %.2e (<=1e-9), max rel sigma = %.2e (<=1e-10), max kappa = %.2e (<=1e-12)",
                  gap_err, sigma_err, kappa_err)};
}

// 2. Log-Sobolev constants with the default optimizer configuration.
Outcome alpha_estimates() {
  const OptimizerConfig cfg;
  double worst = 0.0;
  std::size_t worst_n = 0;
  for (std::size_t n = 4; n <= 16; ++n) {
    const auto r = estimate_alpha(n, cfg);
    const double err = std::max(std::abs(r.value - spectral_gap(n) / 2), std::abs(r.interior_value - r.value));
    if (err > worst) worst = err, worst_n = n;
  }
  const auto two = estimate_alpha(2, cfg);
  const auto three = estimate_alpha(3, cfg);
  const double err2 = std::abs(two.value - 1.0);
  const bool ok = worst <= 1e-6 && err2 <= 1e-6 && three.value < 0.75 - 1e-3;
  return {ok, fmt("n=4..16 worst |est-lambda/2| incl. interior = %.2e at n=%zu (<=1e-6); |alpha_2-1| = %.2e; "
                  "alpha_3 = %.10f (<0.749)",
                  worst, worst_n, err2, three.value)};
}

// 3. Cubic inequality: random search, refinement, constant estimates.
Outcome cubic_suite() {
  constexpr int kTrials = 100000;
  constexpr std::size_t kKeep = 100;
  const std::uint64_t seed = 42;
  double worst_random = INFINITY, worst_refined = INFINITY;
  for (std::size_t n = 4; n <= 32; ++n) {
    std::vector<std::pair<double, int>> scored(kTrials);
    for (int i = 0; i < kTrials; ++i) {
      Rng rng = Rng::stream(seed + n, static_cast<std::uint64_t>(i));
      scored[i] = {cubic_deficit(random_admissible_function(n, rng)).deficit, i};
    }
    std::partial_sort(scored.begin(), scored.begin() + kKeep, scored.end());
    worst_random = std::min(worst_random, scored.front().first);
    for (std::size_t k = 0; k < kKeep; ++k) {
      Rng rng = Rng::stream(seed + n, static_cast<std::uint64_t>(scored[k].second));
      const auto refined = minimize_cubic_deficit(random_admissible_function(n, rng));
      worst_refined = std::min(worst_refined, refined.deficit);
    }
  }
  double const_err = 0.0;
  std::size_t const_n = 0;
  bool in_band = true;
  for (std::size_t n : {4, 5, 6, 8, 12, 32, 64}) {
    const auto r = estimate_cubic_constant(n);
    const double target = 2 * spectral_gap(n) / 3;
    for (double v : {r.value, r.interior_value}) {
      if (v < target - 1e-8 || v > target + 1e-6) in_band = false;
      if (std::abs(v - target) > const_err) const_err = std::abs(v - target), const_n = n;
    }
  }
  const bool ok = worst_random >= -1e-10 && worst_refined >= -1e-8 && in_band;
  return {ok, fmt("min random deficit = %.3e (>=-1e-10), min refined = %.3e (>=-1e-8), "
                  "worst |cubic const - 2lambda/3| incl. interior = %.2e at n=%zu",
                  worst_random, worst_refined, const_err, const_n)};
}

// 4. Saturation along V1 and non-saturation along a k = 2 mode.
Outcome saturation() {
  std::vector<double> eps;
  for (int k = 0; k <= 6; ++k) eps.push_back(0.2 * std::ldexp(1.0, -k));
  bool ok = true;
  double worst_ratio = 0.0, min_limit = INFINITY, limit_gap = 0.0;
  for (std::size_t n : {4, 5, 8, 16}) {
    Rng rng = Rng::stream(7, n);
    const auto pts = perturbation_scan(random_first_mode(n, rng), eps);
    for (std::size_t i = 1; i < pts.size(); ++i) ok = ok && pts[i].scaled < pts[i - 1].scaled + 1e-12;
    const double ratio = pts.back().scaled / pts.front().scaled;
    worst_ratio = std::max(worst_ratio, ratio);
    ok = ok && ratio < 1e-3;

    const auto w = CycleFunction::cosine_mode(n, 2);
    const auto hi = perturbation_scan(w, eps, false);
    // Second-order expansion: deficit / eps^2 -> lambda kappa <w^2>.
    const double limit = spectral_gap(n) * l2_coercivity_constant(n) * inner(w.values(), w.values());
    limit_gap = std::max(limit_gap, std::abs(hi.back().scaled - limit) / limit);
    min_limit = std::min(min_limit, hi.back().scaled);
    ok = ok && hi.back().scaled > 1e-3;
  }
  return {ok, fmt("V1 scans: worst last/first ratio = %.2e (<1e-3), monotone; k=2 scans: smallest limit = %.4f "
                  "(>1e-3), within %.1e relative of lambda kappa <w^2>",
                  worst_ratio, min_limit, limit_gap)};
}

// 5. Scalar bounds, discriminants, identities and the cubic majorant.
Outcome scalar_and_majorant() {
  const auto scan = scan_scalar_bounds(1000000);
  const long points = static_cast<long>(scan.points);
  double scalar_min = INFINITY;
  for (const auto& e : scan.entries) scalar_min = std::min(scalar_min, e.worst);

  double disc_max = -INFINITY;
  auto disc_at = [&](double s) {
    for (auto b : {ScalarBound::General, ScalarBound::FiveCycle, ScalarBound::FourCycle}) {
      disc_max = std::max(disc_max, normalized_discriminant(b, s));
      if (!(scalar_discriminant(b, s) < 0.0)) disc_max = std::max(disc_max, 0.0);
    }
  };
  disc_at(0.0);
  for (int i = 0; i <= 200000; ++i) disc_at(std::pow(10.0, -8.0 + 14.0 * i / 200000.0));
  for (int i = -1000; i <= 1000; ++i) {
    disc_at(kGoldenRatio * (1 + 1e-6 * i));
    disc_at(kSilverRatio * (1 + 1e-6 * i));
  }

  // Absolute residual on a dense grid through both extremal points; beyond
  // that the terms grow like s^2 and the residual is taken relative to s^2+1.
  double ident = 0.0, ident_far = 0.0;
  for (int i = 0; i <= 1000000; ++i) {
    auto [g1, g2] = extremal_identity_residuals(1e-5 * i);
    ident = std::max({ident, std::abs(g1), std::abs(g2)});
  }
  for (int i = 0; i <= 200000; ++i) {
    const double s = std::pow(10.0, -8.0 + 14.0 * i / 200000.0);
    auto [g1, g2] = extremal_identity_residuals(s);
    ident_far = std::max({ident_far, std::abs(g1) / (s * s + 1), std::abs(g2) / (s * s + 1)});
  }

  double h_min = INFINITY;
  for (int i = 0; i <= 1000000; ++i) h_min = std::min(h_min, majorant_deficit(std::pow(10.0, -8.0 + 16.0 * i / 1e6)));

  double p3 = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double t = -1e3 + 1e-3 * i;
    p3 = std::max(p3, std::abs(majorant_identity_residual(t)) / std::max(1.0, std::abs(t * t * t)));
  }

  const bool ok = points >= 1000000 && scalar_min >= -1e-12 && disc_max < 0.0 && ident < 1e-12 && ident_far < 1e-12 &&
                  h_min >= -1e-12 && p3 < 1e-12;
  return {ok, fmt("%ld octant points, min scalar deficit = %.2e; max normalized discriminant = %.3e (<0); "
                  "identity residual = %.2e on s in [0,10], %.2e relative to s^2+1 up to 1e6; min H = %.2e; "
                  "P3 residual / max(1,|t|^3) = %.2e",
                  points, scalar_min, disc_max, ident, ident_far, h_min, p3)};
}

// 6. Cross-term identities and bounds of the three proof cases.
Outcome proof_cases() {
  Rng rng(606);
  double c4 = 0.0, c4_slack = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const auto r = four_cycle_cross_terms(rng.normal(), rng.normal(), rng.normal());
    c4 = std::max({c4, std::abs(r.v_cube), std::abs(r.v_z_squared), std::abs(r.z_cube),
                   std::abs(r.v_squared_z - r.v_squared_z_formula), std::abs(r.r_squared - r.r_squared_formula),
                   r.mode_residual});
    c4_slack = std::min(c4_slack, r.bound_slack);
  }
  double c5 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const std::complex<double> a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
    const auto r = five_cycle_cube(a, b);
    c5 = std::max(c5, r.residual / std::max(1.0, std::pow(std::abs(a) + std::abs(b), 3)));
  }
  double c6 = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 6 + rng.index(59);
    const auto v = random_first_mode(n, rng, rng.uniform(0.0, 2.0));
    const auto z = random_high_frequency(n, rng, rng.uniform(0.0, 2.0));
    c6 = std::min(c6, general_cross_term_bounds(v, z).worst_slack());
  }
  double fq = INFINITY;
  for (std::size_t n = 6; n <= 100; ++n) {
    const double kappa = l2_coercivity_constant(n);
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      for (int j = 0; j <= 200; ++j) {
        const double q0 = kappa * t * t;
        fq = std::min(fq, final_q_deficit(q0 + (10.0 - q0) * j / 200.0, t, n));
      }
    }
  }
  const bool ok = c4 <= 1e-12 && c4_slack >= -1e-12 && c5 < 1e-12 && c6 >= -1e-10 && fq >= -1e-12;
  return {ok, fmt("C4 max residual = %.2e, min slack = %.2e; C5 scaled residual = %.2e; "
                  "n>=6 worst slack = %.2e; final Q grid min = %.3e",
                  c4, c4_slack, c5, c6, fq)};
}

// 7. Tensorization on two small products.
Outcome tensorization() {
  bool ok = true;
  std::string detail;
  for (auto factors : {std::vector<Factor>{{4, 1.0}, {4, 1.0}}, std::vector<Factor>{{4, 1.0}, {6, 1.0}}}) {
    const ProductSpace space(factors);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = estimate_alpha_product(space);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double sharp = sharp_constant(space);
    const double err = std::max(std::abs(r.value - sharp), std::abs(r.interior_value - sharp));
    ok = ok && err <= 1e-5 && secs < 180.0;
    detail += fmt("C%zuxC%zu: est %.9f vs %.9f, err incl. interior %.2e (%.1fs); ", factors[0].n, factors[1].n,
                  r.value, sharp, err, secs);
  }
  return {ok, detail};
}

// 8. Hypercontractivity and semigroup invariants.
Outcome hypercontractivity() {
  double worst = INFINITY, law = 0.0, decay = -INFINITY;
  int boundary = 0;
  for (std::size_t n : {4, 8, 16, 32}) {
    Rng rng = Rng::stream(808, n);
    const double gap = spectral_gap(n);
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> v(n);
      const bool positive = i % 3 != 0;
      for (double& x : v) x = positive ? rng.uniform(0.0, 2.0) : rng.normal();
      const CycleFunction f(std::move(v));
      const double p = 1.0 + rng.uniform(0.01, 4.0);
      const double q = i % 10 == 9 ? 1.0 + rng.uniform(0.01, p - 1.0) : p + rng.uniform(0.0, 8.0);
      const double tmin = minimal_admissible_time(n, p, q);
      double t = tmin + rng.uniform(0.0, 2.0);
      if (i % 4 == 0) t = tmin, ++boundary;
      worst = std::min(worst, hypercontractivity_check(f, {n, t, p, q}).deficit);

      const double s = rng.uniform(0.0, 2.0);
      const auto a = apply_heat(apply_heat(f, s), t), b = apply_heat(f, s + t);
      for (std::size_t j = 0; j < n; ++j) law = std::max(law, std::abs(a[j] - b[j]));
      decay = std::max(decay, variance(b) - std::exp(-2 * gap * (s + t)) * variance(f));
    }
  }
  const bool ok = worst >= -1e-10 && law <= 1e-11 && decay <= 1e-12;
  return {ok, fmt("40000 trials (%d at the boundary time): worst deficit = %.3e (>=-1e-10); "
                  "semigroup law = %.2e (<=1e-11); variance decay excess = %.2e (<=1e-12)",
                  boundary, worst, law, decay)};
}

// 9. n^2 lambda_n -> 2 pi^2.
Outcome continuum_scaling() {
  double prev = INFINITY;
  bool ok = true;
  std::string detail;
  for (std::size_t n : {100, 1000, 10000, 100000}) {
    const double nn = static_cast<double>(n);
    const double err = std::abs(nn * nn * spectral_gap(n) - 2 * kPi * kPi);
    ok = ok && err < prev;
    prev = err;
    detail += fmt("n=%zu: %.3e; ", n, err);
  }
  ok = ok && prev < 1e-5;
  return {ok, detail + "monotone, last < 1e-5"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"constants table", constants_table},
      {"log-Sobolev constants", alpha_estimates},
      {"cubic Sobolev suite", cubic_suite},
      {"saturation", saturation},
      {"scalar and majorant checks", scalar_and_majorant},
      {"proof-case identities", proof_cases},
      {"tensorization", tensorization},
      {"hypercontractivity", hypercontractivity},
      {"continuum scaling", continuum_scaling},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
