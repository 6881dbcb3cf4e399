#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include "cyclelsi/cycle_function.hpp"

namespace cyclelsi {

// Deficits are oriented so that a nonnegative value means the inequality
// holds (rhs - lhs for "lhs <= rhs").

/// Point (a, r, t) on the closed positive octant of the unit sphere.
struct ScalarTriple {
  double a;
  double r;
  double t;

  /// Throws InvalidArgument for negative entries or |a^2+r^2+t^2 - 1| > 1e-12.
  void validate() const;
};

/// The three elementary bounds on r and t, labelled by the cycle lengths
/// whose cross terms they close.
enum class ScalarBound {
  General = 1,    // 3/sqrt2 r^2 t + 3 sqrt2 r t^2 <= (1-a)^2(1+2a) + 4 t^2
  FiveCycle = 2,  // 3/sqrt2 (r^2 t + r t^2)     <= (1-a)^2(1+2a) + 5/2 t^2
  FourCycle = 3,  // 3 r^2 t                      <= (1-a)^2(1+2a) + 3 t^2
};

double scalar_deficit(ScalarBound which, const ScalarTriple& p);

struct ScalarScanEntry {
  ScalarBound bound;
  double worst;
  ScalarTriple at;
};

struct ScalarScan {
  std::size_t points;
  std::array<ScalarScanEntry, 3> entries;  // General, FiveCycle, FourCycle
};

/// Evaluates the three bounds on about `target_points` Fibonacci-sphere points
/// of the octant, plus `edge_points` points on each of the three boundary arcs
/// (which carry the equality cases) and the vertices.
ScalarScan scan_scalar_bounds(std::size_t target_points, std::size_t edge_points = 10000);

/// Discriminant in t of the quadratic that each bound reduces to after
/// dividing by t^2 and substituting s = r / t. Negative for every s >= 0.
double scalar_discriminant(ScalarBound which, double s);
/// scalar_discriminant / (s^2 + 1)^2; maximised at the golden ratio (General)
/// and at 1 + sqrt2 (FiveCycle).
double normalized_discriminant(ScalarBound which, double s);

inline const double kGoldenRatio = (1.0 + std::sqrt(5.0)) / 2.0;
inline const double kSilverRatio = 1.0 + std::sqrt(2.0);

/// Residuals of
///   phi (s^2+1) - s(s+2) = (s - phi)^2 / phi
///   (sigma/2)(s^2+1) - s(s+1) = (s - sigma)^2 / (2 sigma)
/// with phi the golden ratio and sigma = 1 + sqrt2.
std::pair<double, double> extremal_identity_residuals(double s);

/// 2(t-1) + 3(t-1)^2 + (2/3)(t-1)^3.
double cubic_majorant(double t);
/// cubic_majorant(t) - 2 t^2 log t, t > 0. Nonnegative, zero only at t = 1.
double majorant_deficit(double t);
/// Relative error of a Richardson-extrapolated central difference of the
/// fourth derivative of majorant_deficit against 4 / t^2. The 5-point stencil
/// is evaluated at steps h and 2h. Requires t - 4h > 0.
double majorant_fourth_derivative_residual(double t, double h);
/// P3(t) - [(2/3)(t-1)^2(t+2) + (t^2 - 1)], valid for all real t.
double majorant_identity_residual(double t);

struct DeficitReport {
  double lhs;
  double rhs;
  double deficit;
};

/// D(x) >= (2 lambda_n / 3) <(x-1)^2(x+2)>: lhs is the right-hand term of
/// that inequality, rhs is D(x). Requires n >= 4, x >= 0 and <x^2> = 1 within
/// 1e-10.
DeficitReport cubic_deficit(const CycleFunction& x);

/// Same inequality, reassembled from the orthogonal split x = a + v + z:
/// lambda_n [Q - (2/3)(-(1-a)^2(1+2a) + <(v+z)^3>)]. Agrees with
/// cubic_deficit(x).deficit when <x^2> = 1.
double split_deficit(const CycleFunction& x);

struct EntropyBound {
  double entropy;      // Ent(x^2)
  double cubic_bound;  // (2/3) <(x-1)^2(x+2)>
};

/// Requires x >= 0 and <x^2> = 1 within 1e-10.
EntropyBound entropy_vs_cubic(const CycleFunction& x);

struct FourCycleReport {
  double r_squared;          // ||v||_2^2
  double r_squared_formula;  // (p^2 + q^2) / 2
  double t;                  // ||z||_2 = |c|
  double v_cube;             // <v^3>
  double v_z_squared;        // <v z^2>
  double z_cube;             // <z^3>
  double v_squared_z;        // <v^2 z>
  double v_squared_z_formula;  // (c/2)(p^2 - q^2)
  double mode_residual;      // max |v_j - (p cos(pi j/2) + q sin(pi j/2))|
  double bound_slack;        // t r^2 - |<v^2 z>|
};

/// Cross terms on C_4 with v = (p, q, -p, -q) and z = c (-1)^j.
FourCycleReport four_cycle_cross_terms(double p, double q, double c);

struct FiveCycleReport {
  double direct;       // <(v+z)^3> by site summation
  double closed_form;  // 6 Re(A^2 conj(B) + A B^2)
  double residual;     // |direct - closed_form|
  double bound;        // (3/sqrt2)(r^2 t + r t^2)
};

/// v = A chi + conj(A) chi^-1, z = B chi^2 + conj(B) chi^-2 on C_5.
FiveCycleReport five_cycle_cube(std::complex<double> a, std::complex<double> b);

struct GeneralCaseReport {
  double r;
  double t;
  double q;
  double sigma;
  double v_squared_z;  // |<v^2 z>|
  double v_squared_z_bound;  // r^2 t / sqrt2
  double v_z_squared;  // |<v z^2>|
  double v_z_squared_bound;  // sqrt2 r t^2
  double z_cube;       // |<z^3>|
  double z_cube_bound;  // ||z||_inf t^2
  double z_cube_chain_bound;  // sqrt(sigma) sqrt(Q) t^2
  double cube_total;   // <(v+z)^3>
  double cube_total_bound;  // 3/sqrt2 r^2 t + 3 sqrt2 r t^2 + sqrt(sigma Q) t^2

  /// Smallest slack among the bounds; >= -tol means all hold.
  double worst_slack() const;
};

/// Requires n >= 6, v in V1 and z orthogonal to 1 and V1 (residual < 1e-10).
GeneralCaseReport general_cross_term_bounds(const CycleFunction& v, const CycleFunction& z);

/// Q - (8/3) t^2 - (2/3) sqrt(sigma_n) sqrt(Q) t^2 for n >= 6, t in [0, 1]
/// and Q >= kappa_n t^2 (InvalidArgument otherwise, with a 1e-12 band).
double final_q_deficit(double q, double t, std::size_t n);

}  // namespace cyclelsi
