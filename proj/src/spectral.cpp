#include "cyclelsi/spectral.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/summation.hpp"

namespace cyclelsi {

namespace {

using cplx = std::complex<double>;

// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {
    if (plan_ == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW failed to create a plan");
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// exp(-2 pi i m / n) for m = 0..n-1.
std::vector<cplx> twiddles(std::size_t n) {
  std::vector<cplx> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    w[m] = cplx(std::cos(a), -std::sin(a));
  }
  return w;
}

double mean_square(std::span<const double> x) {
  return compensated_mean(x.size(), [&](std::size_t i) { return x[i] * x[i]; });
}

void require_n_at_least(std::size_t n, std::size_t min, const char* what) {
  if (n < min) {
    throw Error(ErrorCode::UnsupportedN, std::string(what) + " needs n >= " + std::to_string(min) +
                                             ", got " + std::to_string(n));
  }
}

}  // namespace

double SpectralDecomposition::parseval_total() const {
  CompensatedSum acc;
  for (const auto& c : coefficients) acc.add(std::norm(c));
  return acc.value();
}

SpectralDecomposition dft_direct(const CycleFunction& x) {
  const std::size_t n = x.size();
  const auto w = twiddles(n);
  SpectralDecomposition s{n, std::vector<cplx>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum re;
    CompensatedSum im;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx t = x[j] * w[(k * j) % n];
      re.add(t.real());
      im.add(t.imag());
    }
    s.coefficients[k] = cplx(re.value(), im.value()) / static_cast<double>(n);
  }
  return s;
}

SpectralDecomposition dft_fast(const CycleFunction& x) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2 + 1;
  auto in = fftw_buffer<double>(n);
  auto out = fftw_buffer<fftw_complex>(half);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.values().begin(), x.values().end(), in.get());
  plan->execute();

  SpectralDecomposition s{n, std::vector<cplx>(n)};
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < half; ++k) {
    s.coefficients[k] = cplx(out[k][0], out[k][1]) * inv_n;
  }
  for (std::size_t k = half; k < n; ++k) s.coefficients[k] = std::conj(s.coefficients[n - k]);
  return s;
}

SpectralDecomposition dft(const CycleFunction& x) {
  return x.size() <= kDirectDftLimit ? dft_direct(x) : dft_fast(x);
}

CycleFunction idft(const SpectralDecomposition& s) {
  const std::size_t n = s.n;
  if (s.coefficients.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match n");
  }
  std::vector<double> x(n);
  if (n <= kDirectDftLimit) {
    const auto w = twiddles(n);
    for (std::size_t j = 0; j < n; ++j) {
      CompensatedSum re;
      for (std::size_t k = 0; k < n; ++k) {
        re.add((s.coefficients[k] * std::conj(w[(k * j) % n])).real());
      }
      x[j] = re.value();
    }
    return CycleFunction(std::move(x));
  }

  auto buf_in = fftw_buffer<fftw_complex>(n);
  auto buf_out = fftw_buffer<fftw_complex>(n);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(fftw_plan_dft_1d(static_cast<int>(n), buf_in.get(),
                                                   buf_out.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  for (std::size_t k = 0; k < n; ++k) {
    buf_in[k][0] = s.coefficients[k].real();
    buf_in[k][1] = s.coefficients[k].imag();
  }
  plan->execute();
  for (std::size_t j = 0; j < n; ++j) x[j] = buf_out[j][0];
  return CycleFunction(std::move(x));
}

double laplacian_eigenvalue(std::size_t k, std::size_t n) {
  if (n == 0 || k >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "mode " + std::to_string(k) + " is not in [0, " + std::to_string(n) + ")");
  }
  // 2(1 - cos 2a) = 4 sin^2 a, folded so that k and n-k give identical bits.
  const std::size_t m = std::min(k, n - k);
  const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  return 4.0 * s * s;
}

double spectral_gap(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::UnsupportedN, "spectral gap needs n >= 2");
  const double s = std::sin(std::numbers::pi / static_cast<double>(n));
  return 2.0 * s * s;
}

namespace {

GapEstimate dense_gap(std::size_t n) {
  const auto sz = static_cast<Eigen::Index>(n);
  // Generator I - K plus 4 * (projection on constants): the zero mode moves
  // above the top of the spectrum (which is <= 2), leaving the gap lowest.
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(sz, sz, 4.0 / static_cast<double>(n));
  for (Eigen::Index i = 0; i < sz; ++i) {
    g(i, i) += 1.0;
    g(i, (i + 1) % sz) -= 0.5;
    g(i, (i + sz - 1) % sz) -= 0.5;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "dense eigensolve failed for n = " + std::to_string(n));
  }
  return {solver.eigenvalues().minCoeff(), GapMethod::DenseEigen, 1, 0.0};
}

// Solves the cyclic tridiagonal system with diagonal `diag`, off-diagonals
// and corners all equal to `off` (Sherman-Morrison on top of Thomas).
class CyclicSolver {
 public:
  CyclicSolver(std::size_t n, double diag, double off)
      : n_(n), off_(off), gamma_(-diag), bb_(n, diag), z_(n), cprime_(n), denom_(n) {
    bb_[0] = diag - gamma_;
    bb_[n - 1] = diag - off * off / gamma_;
    factor();
    std::vector<double> u(n, 0.0);
    u[0] = gamma_;
    u[n - 1] = off_;
    solve_tridiagonal(u, z_);
  }

  void solve(std::span<const double> rhs, std::span<double> out) const {
    solve_tridiagonal(rhs, out);
    const double fact = (out[0] + off_ * out[n_ - 1] / gamma_) /
                        (1.0 + z_[0] + off_ * z_[n_ - 1] / gamma_);
    for (std::size_t i = 0; i < n_; ++i) out[i] -= fact * z_[i];
  }

 private:
  void factor() {
    denom_[0] = bb_[0];
    cprime_[0] = off_ / denom_[0];
    for (std::size_t i = 1; i < n_; ++i) {
      denom_[i] = bb_[i] - off_ * cprime_[i - 1];
      cprime_[i] = off_ / denom_[i];
    }
  }

  void solve_tridiagonal(std::span<const double> rhs, std::span<double> out) const {
    out[0] = rhs[0] / denom_[0];
    for (std::size_t i = 1; i < n_; ++i) out[i] = (rhs[i] - off_ * out[i - 1]) / denom_[i];
    for (std::size_t i = n_ - 1; i-- > 0;) out[i] -= cprime_[i] * out[i + 1];
  }

  std::size_t n_;
  double off_;
  double gamma_;
  std::vector<double> bb_;
  std::vector<double> z_;
  std::vector<double> cprime_;
  std::vector<double> denom_;
};

void center_and_normalize(std::vector<double>& x) {
  const double m = average(x);
  for (double& v : x) v -= m;
  const double norm = std::sqrt(mean_square(x));
  for (double& v : x) v /= norm;
}

GapEstimate inverse_iteration_gap(std::size_t n) {
  if (n < 3) return dense_gap(n);
  const double shift = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  CyclicSolver solver(n, 1.0 + shift, -0.5);

  std::mt19937_64 rng(0x5eedULL);
  std::vector<double> x(n);
  for (double& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  center_and_normalize(x);

  std::vector<double> y(n);
  double previous = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 500;
  for (int it = 1; it <= kMaxIterations; ++it) {
    solver.solve(x, y);
    std::swap(x, y);
    center_and_normalize(x);
    const double rq = dirichlet_form(x) / variance(x);
    const double change = std::abs(rq - previous);
    if (it >= 3 && change <= 1e-14 * rq) return {rq, GapMethod::InverseIteration, it, change};
    previous = rq;
  }
  throw Error(ErrorCode::NonConvergence,
              "inverse iteration for n = " + std::to_string(n) + " did not settle in " +
                  std::to_string(kMaxIterations) + " steps; last quotient " +
                  std::to_string(previous));
}

}  // namespace

GapEstimate spectral_gap_numeric(std::size_t n, GapMethod method) {
  if (n < 2) throw Error(ErrorCode::UnsupportedN, "spectral gap needs n >= 2");
  switch (method) {
    case GapMethod::DenseEigen: return dense_gap(n);
    case GapMethod::InverseIteration: return inverse_iteration_gap(n);
    case GapMethod::Auto: break;
  }
  return n <= kDenseGapLimit ? dense_gap(n) : inverse_iteration_gap(n);
}

CycleFunction project_first_mode(const CycleFunction& x) {
  const std::size_t n = x.size();
  require_n_at_least(n, 3, "projection on V1");
  std::vector<double> c(n);
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    c[j] = std::cos(a);
    s[j] = std::sin(a);
  }
  // c_1 = <x exp(-i a)>, low = 2 Re(c_1 exp(i a)).
  const double re = inner(x.values(), c);
  const double im = -inner(x.values(), s);
  std::vector<double> low(n);
  for (std::size_t j = 0; j < n; ++j) low[j] = 2.0 * (re * c[j] - im * s[j]);
  return CycleFunction(std::move(low));
}

double q_form(const CycleFunction& z) {
  return mean_squared_increment(z) / spectral_gap(z.size()) - 2.0 * mean_square(z.values());
}

FrequencySplit decompose(const CycleFunction& x) {
  const std::size_t n = x.size();
  require_n_at_least(n, 4, "decompose");
  const double mean = average(x);
  CycleFunction low = project_first_mode(x);
  std::vector<double> high(n);
  for (std::size_t j = 0; j < n; ++j) high[j] = x[j] - mean - low[j];
  CycleFunction z(std::move(high));
  const double r = std::sqrt(mean_square(low.values()));
  const double t = std::sqrt(mean_square(z.values()));
  const double q = q_form(z);
  return FrequencySplit{mean, std::move(low), std::move(z), r, t, q};
}

double sup_norm_constant(std::size_t n) {
  require_n_at_least(n, 4, "sup_norm_constant");
  const double tn = std::tan(std::numbers::pi / static_cast<double>(n));
  return 0.75 - 0.25 * tn * tn;
}

double sup_norm_constant_sum(std::size_t n) {
  require_n_at_least(n, 4, "sup_norm_constant_sum");
  const double lambda = spectral_gap(n);
  CompensatedSum acc;
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    acc.add(1.0 / (laplacian_eigenvalue(k, n) / lambda - 2.0));
  }
  return acc.value();
}

double l2_coercivity_constant(std::size_t n) {
  require_n_at_least(n, 4, "l2_coercivity_constant");
  const double c = std::cos(std::numbers::pi / static_cast<double>(n));
  return 8.0 * c * c - 2.0;
}

double l2_coercivity_constant_direct(std::size_t n) {
  require_n_at_least(n, 4, "l2_coercivity_constant_direct");
  const double lambda = spectral_gap(n);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    best = std::min(best, laplacian_eigenvalue(k, n) / lambda - 2.0);
  }
  return best;
}

HighFrequencyConstants high_frequency_constants(std::size_t n) {
  require_n_at_least(n, 4, "high_frequency_constants");
  return {n, spectral_gap(n), sup_norm_constant(n), l2_coercivity_constant(n)};
}

namespace {

void require_high_frequency(const CycleFunction& z, const Tolerances& tol) {
  const double scale = std::max(1.0, std::sqrt(mean_square(z.values())));
  const double mean = std::abs(average(z));
  const double low = std::sqrt(mean_square(project_first_mode(z).values()));
  if (mean >= tol.subspace_residual * scale || low >= tol.subspace_residual * scale) {
    throw Error(ErrorCode::NotHighFrequency,
                "input has mean " + std::to_string(mean) + " and V1 part " + std::to_string(low));
  }
}

}  // namespace

BoundCheck sup_norm_bound_check(const CycleFunction& z, const Tolerances& tol) {
  const std::size_t n = z.size();
  require_n_at_least(n, 4, "sup_norm_bound_check");
  require_high_frequency(z, tol);
  double sup = 0.0;
  for (double v : z.values()) sup = std::max(sup, std::abs(v));
  return {q_form(z), sup * sup / sup_norm_constant(n)};
}

FirstModeProperties first_mode_properties(const CycleFunction& v, const Tolerances& tol) {
  const std::size_t n = v.size();
  require_n_at_least(n, 4, "first_mode_properties");
  const double r = std::sqrt(mean_square(v.values()));
  if (r == 0.0) throw Error(ErrorCode::InvalidArgument, "v must be nonzero");
  const CycleFunction proj = project_first_mode(v);
  const double residual = std::sqrt(mean_square((v - proj).values()));
  if (residual >= tol.subspace_residual * std::max(1.0, r)) {
    throw Error(ErrorCode::NotInV1, "distance to V1 is " + std::to_string(residual));
  }
  double sup = 0.0;
  for (double x : v.values()) sup = std::max(sup, std::abs(x));
  const double cube = compensated_mean(n, [&](std::size_t i) { return v[i] * v[i] * v[i]; });
  const double sq_mean = r * r;
  const double fluct = std::sqrt(compensated_mean(n, [&](std::size_t i) {
    const double d = v[i] * v[i] - sq_mean;
    return d * d;
  }));
  return {cube, sup / r, fluct / (r * r)};
}

}  // namespace cyclelsi
