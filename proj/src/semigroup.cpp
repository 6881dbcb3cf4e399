#include "cyclelsi/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclelsi/error.hpp"
#include "cyclelsi/spectral.hpp"

namespace cyclelsi {

CycleFunction apply_kernel(const CycleFunction& f) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 0.5 * (f[(i + n - 1) % n] + f[(i + 1) % n]);
  }
  return CycleFunction(std::move(out));
}

CycleFunction apply_heat(const CycleFunction& f, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "t = " + std::to_string(t));
  if (t == 0.0) return f;
  SpectralDecomposition s = dft(f);
  const std::size_t n = s.n;
  for (std::size_t k = 0; k < n; ++k) {
    const double sn = std::sin(std::numbers::pi * static_cast<double>(std::min(k, n - k)) /
                               static_cast<double>(n));
    s.coefficients[k] *= std::exp(-2.0 * t * sn * sn);
  }
  return idft(s);
}

void SemigroupQuery::validate() const {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be > 1");
  if (!(q > 1.0) || !std::isfinite(q)) throw Error(ErrorCode::InvalidArgument, "q must be > 1");
}

bool SemigroupQuery::admissible() const {
  return std::exp(-2.0 * spectral_gap(n) * t) <= (p - 1.0) / (q - 1.0) + 1e-14;
}

double minimal_admissible_time(std::size_t n, double p, double q) {
  if (q <= p) return 0.0;
  return std::log((q - 1.0) / (p - 1.0)) / (2.0 * spectral_gap(n));
}

HypercontractivityReport hypercontractivity_check(const CycleFunction& f,
                                                  const SemigroupQuery& query) {
  query.validate();
  if (f.size() != query.n) throw Error(ErrorCode::InvalidArgument, "f does not live on C_n");
  if (!query.admissible()) {
    throw Error(ErrorCode::InadmissibleQuery,
                "t = " + std::to_string(query.t) + " is below the minimal admissible time " +
                    std::to_string(minimal_admissible_time(query.n, query.p, query.q)));
  }
  HypercontractivityReport r{};
  r.rhs = lp_norm(f, query.p);
  r.lhs = lp_norm(apply_heat(f, query.t), query.q);
  r.deficit = r.rhs - r.lhs;
  r.within_hypothesis = query.n >= 4;
  return r;
}

}  // namespace cyclelsi
