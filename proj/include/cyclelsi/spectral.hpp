#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cyclelsi/cycle_function.hpp"

namespace cyclelsi {

/// Fourier coefficients c_k = <conj(chi_k) x>, chi_k(j) = exp(2 pi i k j / n),
/// so that x = sum_k c_k chi_k and <x^2> = sum_k |c_k|^2.
struct SpectralDecomposition {
  std::size_t n = 0;
  std::vector<std::complex<double>> coefficients;

  double parseval_total() const;
};

/// Picks the direct sum for n <= kDirectDftLimit and the FFT otherwise.
SpectralDecomposition dft(const CycleFunction& x);
/// O(n^2) reference transform.
SpectralDecomposition dft_direct(const CycleFunction& x);
/// O(n log n) transform.
SpectralDecomposition dft_fast(const CycleFunction& x);
/// Real part of sum_k c_k chi_k.
CycleFunction idft(const SpectralDecomposition& s);

inline constexpr std::size_t kDirectDftLimit = 64;

/// Eigenvalue of the graph Laplacian on mode k: 2 (1 - cos(2 pi k / n)).
/// Throws IndexOutOfRange unless 0 <= k < n.
double laplacian_eigenvalue(std::size_t k, std::size_t n);

/// Spectral gap 1 - cos(2 pi / n), n >= 2. Equals laplacian_eigenvalue(1, n) / 2.
double spectral_gap(std::size_t n);

enum class GapMethod { Auto, DenseEigen, InverseIteration };

struct GapEstimate {
  double value = 0.0;
  GapMethod method = GapMethod::Auto;
  int iterations = 0;
  double last_change = 0.0;
};

/// inf over nonconstant f of dirichlet_form(f) / variance(f), computed without
/// the closed form: a dense eigensolve of the constant-deflated generator for
/// small n, and shifted inverse iteration with a cyclic tridiagonal solver
/// otherwise. Throws NonConvergence if the Rayleigh quotient does not settle.
GapEstimate spectral_gap_numeric(std::size_t n, GapMethod method = GapMethod::Auto);

inline constexpr std::size_t kDenseGapLimit = 128;

/// Orthogonal split x = mean + low + high, with low the projection on
/// V1 = span{cos(2 pi j/n), sin(2 pi j/n)} and high orthogonal to constants and V1.
struct FrequencySplit {
  double mean;          // <x>
  CycleFunction low;    // in V1
  CycleFunction high;   // modes 2..n-2
  double low_norm;      // ||low||_2
  double high_norm;     // ||high||_2
  double q_value;       // q_form(high)
};

/// Requires n >= 4 (UnsupportedN otherwise).
FrequencySplit decompose(const CycleFunction& x);

/// Projection of x onto V1, done in coefficient space from the k = 1 coefficient.
CycleFunction project_first_mode(const CycleFunction& x);

/// Q(z) = D(z) / lambda_n - 2 <z^2>.
double q_form(const CycleFunction& z);

/// 3/4 - tan^2(pi/n) / 4.
double sup_norm_constant(std::size_t n);
/// sum_{k=2}^{n-2} 1 / (mu_k / lambda_n - 2), the telescoped sum above.
double sup_norm_constant_sum(std::size_t n);
/// 8 cos^2(pi/n) - 2.
double l2_coercivity_constant(std::size_t n);
/// min_{2 <= k <= n-2} (mu_k / lambda_n - 2).
double l2_coercivity_constant_direct(std::size_t n);

struct HighFrequencyConstants {
  std::size_t n;
  double lambda;
  double sigma;
  double kappa;
};

HighFrequencyConstants high_frequency_constants(std::size_t n);

struct Tolerances {
  /// Residual band for "z is orthogonal to 1 and V1" / "v lies in V1".
  double subspace_residual = 1e-10;
};

struct BoundCheck {
  double lhs;
  double rhs;
  double slack() const { return lhs - rhs; }
};

/// (Q(z), ||z||_inf^2 / sigma_n). Throws NotHighFrequency if z has a mean or
/// V1 component above the tolerance.
BoundCheck sup_norm_bound_check(const CycleFunction& z, const Tolerances& tol = {});

struct FirstModeProperties {
  double cube_mean;          // <v^3>
  double sup_ratio;          // ||v||_inf / r
  double fluctuation_ratio;  // ||v^2 - <v^2>||_2 / r^2
};

/// Requires v in V1 (NotInV1) and v != 0 (InvalidArgument). The fluctuation
/// identity ratio = 1/sqrt(2) holds for n >= 5; on C_4 chi^2 = chi^-2 and the
/// ratio depends on the phase of v.
FirstModeProperties first_mode_properties(const CycleFunction& v, const Tolerances& tol = {});

}  // namespace cyclelsi
