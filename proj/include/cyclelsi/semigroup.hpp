#pragma once

#include <cstddef>

#include "cyclelsi/cycle_function.hpp"

namespace cyclelsi {

/// (Kf)_i = (f_{i-1} + f_{i+1}) / 2, one step of the simple random walk.
CycleFunction apply_kernel(const CycleFunction& f);

/// P_t f = exp(-t (I - K)) f, applied as the multiplier
/// exp(-t (1 - cos(2 pi k / n))) on Fourier mode k. Throws NegativeTime.
CycleFunction apply_heat(const CycleFunction& f, double t);

/// Request to compare ||P_t f||_q with ||f||_p.
struct SemigroupQuery {
  std::size_t n;
  double t;
  double p;
  double q;

  /// Throws InvalidArgument unless n >= 2, t >= 0, p > 1, q > 1.
  void validate() const;
  /// exp(-2 lambda_n t) <= (p - 1) / (q - 1) + 1e-14.
  bool admissible() const;
};

/// Smallest t with exp(-2 lambda_n t) <= (p - 1) / (q - 1); 0 when q <= p.
double minimal_admissible_time(std::size_t n, double p, double q);

struct HypercontractivityReport {
  double lhs;      // ||P_t f||_q
  double rhs;      // ||f||_p
  double deficit;  // rhs - lhs
  /// False for n < 4, where the bound is not claimed.
  bool within_hypothesis;
};

/// Throws InvalidArgument if f.size() != query.n and InadmissibleQuery when
/// the time is too short for the (p, q) pair.
HypercontractivityReport hypercontractivity_check(const CycleFunction& f,
                                                  const SemigroupQuery& query);

}  // namespace cyclelsi
