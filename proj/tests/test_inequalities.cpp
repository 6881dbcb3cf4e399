#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cyclelsi/error.hpp"
#include "cyclelsi/inequalities.hpp"
#include "cyclelsi/random.hpp"
#include "cyclelsi/spectral.hpp"

using namespace cyclelsi;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

CycleFunction cf(std::vector<double> v) { return CycleFunction(std::move(v)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

// Literal right-hand minus left-hand sides, written out independently.
double ref_deficit(int which, double a, double r, double t) {
  const double base = (1 - a) * (1 - a) * (1 + 2 * a);
  switch (which) {
    case 1: return base + 4 * t * t - (3 / kSqrt2 * r * r * t + 3 * kSqrt2 * r * t * t);
    case 2: return base + 2.5 * t * t - 3 / kSqrt2 * (r * r * t + r * t * t);
    default: return base + 3 * t * t - 3 * r * r * t;
  }
}

double p3(double t) { return 2 * (t - 1) + 3 * (t - 1) * (t - 1) + 2.0 / 3.0 * std::pow(t - 1, 3); }

}  // namespace

TEST(Scalar, Examples) {
  for (auto b : {ScalarBound::General, ScalarBound::FiveCycle, ScalarBound::FourCycle}) {
    EXPECT_NEAR(scalar_deficit(b, {1, 0, 0}), 0.0, 1e-16);
  }
  EXPECT_NEAR(scalar_deficit(ScalarBound::General, {0, 1, 0}), 1.0, 1e-15);
  EXPECT_NEAR(scalar_deficit(ScalarBound::General, {0, 0, 1}), 5.0, 1e-15);
  EXPECT_EQ(code_of([] { scalar_deficit(ScalarBound::General, {0.5, 0.5, 0.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { scalar_deficit(ScalarBound::General, {-1, 0, 0}); }), ErrorCode::InvalidArgument);
}

TEST(Scalar, MatchesReferenceAndIsNonnegative) {
  Rng rng(21);
  for (int trial = 0; trial < 20000; ++trial) {
    double a = std::abs(rng.normal()), r = std::abs(rng.normal()), t = std::abs(rng.normal());
    const double s = std::sqrt(a * a + r * r + t * t);
    a /= s, r /= s, t /= s;
    for (int w = 1; w <= 3; ++w) {
      const double d = scalar_deficit(static_cast<ScalarBound>(w), {a, r, t});
      EXPECT_NEAR(d, ref_deficit(w, a, r, t), 1e-14);
      EXPECT_GE(d, -1e-12);
    }
  }
}

TEST(Discriminant, Examples) {
  EXPECT_NEAR(scalar_discriminant(ScalarBound::FourCycle, 0.0), -9.0, 1e-15);
  EXPECT_NEAR(scalar_discriminant(ScalarBound::General, 0.0), -12.0, 1e-15);
  EXPECT_NEAR(scalar_discriminant(ScalarBound::FiveCycle, 0.0), -7.5, 1e-15);
  const double s = 1.7;
  EXPECT_NEAR(scalar_discriminant(ScalarBound::General, s),
              4.5 * s * s * (s + 2) * (s + 2) - 12 * std::pow(s * s + 1, 2), 1e-12);
  EXPECT_LT(scalar_discriminant(ScalarBound::General, kGoldenRatio), 0.0);
  EXPECT_LT(scalar_discriminant(ScalarBound::FiveCycle, kSilverRatio), 0.0);
}

TEST(Discriminant, NormalizedMaximaSitAtExtremalPoints) {
  for (auto [which, peak] : {std::pair{ScalarBound::General, kGoldenRatio},
                             std::pair{ScalarBound::FiveCycle, kSilverRatio}}) {
    double best = -INFINITY, arg = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
      const double s = 1e-3 * i;
      const double v = normalized_discriminant(which, s);
      if (v > best) best = v, arg = s;
    }
    EXPECT_NEAR(arg, peak, 2e-3);
    EXPECT_GE(normalized_discriminant(which, peak), best - 1e-12);
    EXPECT_LT(best, 0.0);
  }
}

TEST(Extremal, Identities) {
  auto [g1, g2] = extremal_identity_residuals(kGoldenRatio);
  EXPECT_LT(std::abs(g1), 1e-15);
  auto z = extremal_identity_residuals(0.0);
  EXPECT_LT(std::abs(z.first), 1e-15);
  EXPECT_LT(std::abs(z.second), 1e-15);
  for (int i = 0; i <= 10000; ++i) {
    auto [a, b] = extremal_identity_residuals(1e-3 * i);
    EXPECT_LT(std::abs(a), 1e-12);
    EXPECT_LT(std::abs(b), 1e-12);
  }
  (void)g2;
}

TEST(Majorant, Examples) {
  EXPECT_EQ(majorant_deficit(1.0), 0.0);
  EXPECT_NEAR(majorant_deficit(1e-12), 1.0 / 3.0, 1e-10);
  const double e = std::numbers::e;
  EXPECT_NEAR(majorant_deficit(e), p3(e) - 2 * e * e, 1e-13);
  EXPECT_GT(majorant_deficit(e), 0.0);
  EXPECT_EQ(code_of([] { majorant_deficit(0.0); }), ErrorCode::InvalidArgument);
  EXPECT_NEAR(cubic_majorant(0.0), 1.0 / 3.0, 1e-15);
}

TEST(Majorant, NonnegativeOnLogGridAndFlatAtOne) {
  for (int i = 0; i <= 200000; ++i) {
    const double t = std::pow(10.0, -8.0 + 16.0 * i / 200000.0);
    EXPECT_GE(majorant_deficit(t), -1e-12) << t;
  }
  // H and its first three derivatives vanish at 1, so H(1 + h) = O(h^4).
  for (double h : {1e-2, 5e-3}) {
    EXPECT_LT(std::abs(majorant_deficit(1 + h)), h * h * h * h);
    EXPECT_LT(std::abs(majorant_deficit(1 - h)), h * h * h * h);
  }
}

TEST(Majorant, FourthDerivative) {
  EXPECT_LE(majorant_fourth_derivative_residual(1.0, 0.01), 1e-4);
  EXPECT_LE(majorant_fourth_derivative_residual(2.0, 0.02), 1e-4);
  EXPECT_LE(majorant_fourth_derivative_residual(0.5, 0.005), 1e-4);
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.1 * std::pow(100.0, i / 100.0);
    EXPECT_LE(majorant_fourth_derivative_residual(t, 1e-2 * t), 1e-4) << t;
  }
}

TEST(Majorant, PolynomialIdentity) {
  EXPECT_EQ(majorant_identity_residual(1.0), 0.0);
  EXPECT_NEAR(majorant_identity_residual(0.0), 0.0, 1e-15);
  EXPECT_NEAR(majorant_identity_residual(-5.0), 0.0, 1e-12);
  for (int i = 0; i <= 20000; ++i) {
    const double t = -1e3 + 0.1 * i;
    EXPECT_LE(std::abs(majorant_identity_residual(t)), 1e-12 * std::max(1.0, std::abs(t * t * t)));
  }
}

TEST(CubicDeficit, Examples) {
  auto one = cubic_deficit(CycleFunction::constant(6, 1.0));
  EXPECT_EQ(one.deficit, 0.0);
  EXPECT_EQ(one.lhs, 0.0);

  const std::size_t n = 10;
  const auto v = CycleFunction::cosine_mode(n, 1);
  const double eps = 0.01;
  auto x = CycleFunction::constant(n, 1.0) + eps * v;
  x = (1.0 / std::sqrt(1 + eps * eps * 0.5)) * x;
  auto r = cubic_deficit(x);
  EXPECT_LT(r.deficit / (eps * eps), 0.05);
  EXPECT_EQ(r.deficit, r.rhs - r.lhs);
  EXPECT_NEAR(r.rhs, mean_squared_increment(x), 0.0);

  EXPECT_EQ(code_of([] { cubic_deficit(CycleFunction::constant(3, 1.0)); }), ErrorCode::UnsupportedN);
  EXPECT_EQ(code_of([] { cubic_deficit(CycleFunction::constant(4, 1.1)); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { cubic_deficit(cf({std::sqrt(2.0), 0, std::sqrt(2.0), -1e-6})); }),
            ErrorCode::NegativeEntries);
}

TEST(CubicDeficit, RandomSearchAndChainConsistency) {
  Rng rng(22);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t n = 4 + rng.index(29);
    const auto x = random_admissible_function(n, rng);
    const auto r = cubic_deficit(x);
    EXPECT_GE(r.deficit, -1e-10);
    if (trial % 10 == 0) EXPECT_NEAR(split_deficit(x), r.deficit, 1e-10);
  }
}

TEST(EntropyVsCubic, Examples) {
  auto one = entropy_vs_cubic(CycleFunction::constant(5, 1.0));
  EXPECT_EQ(one.entropy, 0.0);
  EXPECT_EQ(one.cubic_bound, 0.0);
  const double s = std::sqrt(2.0);
  auto two = entropy_vs_cubic(cf({s, s, 0, 0}));
  EXPECT_NEAR(two.entropy, std::log(2.0), 1e-15);
  EXPECT_NEAR(two.cubic_bound, 0.8619, 1e-4);
  Rng rng(23);
  for (int trial = 0; trial < 10000; ++trial) {
    auto b = entropy_vs_cubic(random_admissible_function(4 + rng.index(13), rng));
    EXPECT_LE(b.entropy, b.cubic_bound + 1e-12);
  }
}

TEST(FourCycle, Examples) {
  auto eq = four_cycle_cross_terms(0.8, 0.8, 1.5);
  EXPECT_NEAR(eq.v_squared_z, 0.0, 1e-15);
  auto tight = four_cycle_cross_terms(1.0, 0.0, 1.0);
  EXPECT_NEAR(std::abs(tight.v_squared_z), 0.5, 1e-15);
  EXPECT_NEAR(tight.t * tight.r_squared, 0.5, 1e-15);
  EXPECT_NEAR(tight.bound_slack, 0.0, 1e-15);
  auto flat = four_cycle_cross_terms(0.3, -0.2, 0.0);
  EXPECT_EQ(flat.v_squared_z, 0.0);
  EXPECT_EQ(flat.v_z_squared, 0.0);
  EXPECT_EQ(flat.z_cube, 0.0);

  Rng rng(24);
  for (int trial = 0; trial < 10000; ++trial) {
    auto r = four_cycle_cross_terms(rng.normal(), rng.normal(), rng.normal());
    EXPECT_LT(std::abs(r.v_cube), 1e-12);
    EXPECT_LT(std::abs(r.v_z_squared), 1e-12);
    EXPECT_LT(std::abs(r.z_cube), 1e-12);
    EXPECT_LT(std::abs(r.v_squared_z - r.v_squared_z_formula), 1e-12);
    EXPECT_LT(std::abs(r.r_squared - r.r_squared_formula), 1e-12);
    EXPECT_LT(r.mode_residual, 1e-12);
    EXPECT_GE(r.bound_slack, -1e-12);
  }
}

TEST(FiveCycle, Examples) {
  auto zero_a = five_cycle_cube(0.0, {0.4, 0.1});
  EXPECT_NEAR(zero_a.direct, 0.0, 1e-15);
  EXPECT_EQ(zero_a.closed_form, 0.0);
  auto zero_b = five_cycle_cube({0.4, 0.1}, 0.0);
  EXPECT_NEAR(zero_b.direct, 0.0, 1e-15);
  auto unit = five_cycle_cube(1.0, 1.0);
  EXPECT_NEAR(unit.direct, 12.0, 1e-13);
  EXPECT_NEAR(unit.closed_form, 12.0, 1e-15);

  Rng rng(25);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::complex<double> a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
    auto r = five_cycle_cube(a, b);
    const double scale = std::pow(std::abs(a) + std::abs(b), 3);
    EXPECT_LT(r.residual, 1e-12 * scale);
  }
}

TEST(GeneralCase, Examples) {
  const std::size_t n = 8;
  auto zero = general_cross_term_bounds(CycleFunction::cosine_mode(n, 1), CycleFunction::constant(n, 0.0));
  EXPECT_GE(zero.worst_slack(), 0.0);
  EXPECT_EQ(zero.z_cube, 0.0);
  auto modes = general_cross_term_bounds(CycleFunction::cosine_mode(n, 1), CycleFunction::cosine_mode(n, 2));
  EXPECT_GT(modes.worst_slack(), 0.0);
  EXPECT_EQ(code_of([] {
              general_cross_term_bounds(CycleFunction::cosine_mode(5, 1), CycleFunction::cosine_mode(5, 2));
            }),
            ErrorCode::UnsupportedN);
  EXPECT_EQ(code_of([] {
              general_cross_term_bounds(CycleFunction::cosine_mode(8, 2), CycleFunction::cosine_mode(8, 2));
            }),
            ErrorCode::NotInV1);
  EXPECT_EQ(code_of([] {
              general_cross_term_bounds(CycleFunction::cosine_mode(8, 1), CycleFunction::cosine_mode(8, 1));
            }),
            ErrorCode::NotHighFrequency);
}

TEST(GeneralCase, RandomPairs) {
  Rng rng(26);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 6 + rng.index(59);
    const auto v = random_first_mode(n, rng, rng.uniform(0.0, 2.0));
    const auto z = random_high_frequency(n, rng, rng.uniform(0.0, 2.0));
    EXPECT_GE(general_cross_term_bounds(v, z).worst_slack(), -1e-10);
  }
}

TEST(FinalQ, Examples) {
  EXPECT_EQ(final_q_deficit(2.5, 0.0, 9), 2.5);
  const double d = final_q_deficit(4.0, 1.0, 6);
  EXPECT_NEAR(d, 4 - 8.0 / 3 - 2.0 / 3 * std::sqrt(2.0 / 3) * 2, 1e-15);
  EXPECT_NEAR(d, 0.245, 1e-3);
  EXPECT_THROW(final_q_deficit(1.0, 1.0, 6), Error);
  EXPECT_THROW(final_q_deficit(5.0, 1.0, 5), Error);
  EXPECT_THROW(final_q_deficit(5.0, 1.5, 8), Error);
}

TEST(FinalQ, Grid) {
  double worst = INFINITY;
  for (std::size_t n = 6; n <= 100; n += 7) {
    const double kappa = l2_coercivity_constant(n);
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      const double q0 = kappa * t * t;
      for (int j = 0; j <= 100; ++j) {
        const double q = q0 + (10.0 - q0) * j / 100.0;
        worst = std::min(worst, final_q_deficit(q, t, n));
      }
    }
  }
  EXPECT_GE(worst, -1e-12);
}

TEST(Scalar, OctantScanFindsEqualityAtConstantPoint) {
  const auto scan = scan_scalar_bounds(20000, 500);
  EXPECT_GE(scan.points, 20000u);
  for (const auto& e : scan.entries) {
    EXPECT_GE(e.worst, -1e-12);
    EXPECT_LE(e.worst, 1e-12);
    EXPECT_NEAR(e.at.a, 1.0, 1e-6);
  }
}
