#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cyclelsi {

/// A real function on the cycle Z/nZ, n >= 2. Indices passed to `at` wrap
/// modulo n, so the neighbour of site n-1 is site 0.
class CycleFunction {
 public:
  /// Throws InvalidArgument for n < 2 or non-finite entries.
  explicit CycleFunction(std::vector<double> values);

  static CycleFunction constant(std::size_t n, double c);
  static CycleFunction generate(std::size_t n, const std::function<double(std::size_t)>& fn);
  /// cos(2*pi*k*j/n) and sin(2*pi*k*j/n), with k*j reduced mod n before the
  /// trig call so that values are exact at the lattice points.
  static CycleFunction cosine_mode(std::size_t n, std::size_t k, double amplitude = 1.0,
                                   double phase = 0.0);
  static CycleFunction sine_mode(std::size_t n, std::size_t k, double amplitude = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double at(std::ptrdiff_t i) const noexcept;
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool operator==(const CycleFunction&) const = default;

 private:
  std::vector<double> values_;
};

CycleFunction operator+(const CycleFunction& a, const CycleFunction& b);
CycleFunction operator-(const CycleFunction& a, const CycleFunction& b);
CycleFunction operator*(double s, const CycleFunction& f);
CycleFunction abs(const CycleFunction& f);

struct FunctionalReport {
  double average;
  double variance;
  double entropy;       // NaN when the input has negative entries
  bool entropy_defined;
  double dirichlet;
  double d_quantity;    // exactly 2 * dirichlet
};

// Averages are taken with the uniform probability measure on the n sites.
// The span overloads assume size() >= 1 and are what the optimizer calls.

double average(std::span<const double> f);
double average(const CycleFunction& f);

/// <f^2> - <f>^2, clamped to 0 when rounding makes it slightly negative.
double variance(std::span<const double> f);
double variance(const CycleFunction& f);

/// Relative entropy <g log g> - <g> log <g> with 0 log 0 = 0.
/// Entries in [-1e-12, 0) are treated as 0; anything more negative throws
/// NegativeInput.
double entropy(std::span<const double> g);
double entropy(const CycleFunction& g);
/// Ent(f^2) without materialising f^2.
double entropy_of_square(std::span<const double> f);

/// (1/2n) sum_i (f_i - f_{i+1})^2. On C_2 both orientations of the single
/// edge are summed, which is what the formula says literally.
double dirichlet_form(std::span<const double> f);
double dirichlet_form(const CycleFunction& f);

/// <(x_j - x_{j+1})^2>, equal to 2 * dirichlet_form(x) bit for bit.
double mean_squared_increment(std::span<const double> x);
double mean_squared_increment(const CycleFunction& x);

/// (Lf)_j = 2 f_j - f_{j-1} - f_{j+1}.
CycleFunction apply_laplacian(const CycleFunction& f);
void apply_laplacian(std::span<const double> f, std::span<double> out);

/// <(x - 1)^2 (x + 2)>.
double cubic_nonlinearity(std::span<const double> x);
double cubic_nonlinearity(const CycleFunction& x);

FunctionalReport functional_report(const CycleFunction& f);

/// <|f|^p>^(1/p) under the normalized average, p >= 1.
double lp_norm(std::span<const double> f, double p);
double lp_norm(const CycleFunction& f, double p);

/// <f g>.
double inner(std::span<const double> f, std::span<const double> g);

}  // namespace cyclelsi
