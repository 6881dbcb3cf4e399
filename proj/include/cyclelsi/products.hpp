#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cyclelsi/cycle_function.hpp"
#include "cyclelsi/optimize.hpp"

namespace cyclelsi {

struct Factor {
  std::size_t n;
  double weight;
};

/// Product of weighted cycles with the uniform product measure.
class ProductSpace {
 public:
  static constexpr std::size_t kDefaultStateLimit = 4096;

  /// Throws InvalidArgument for an empty factor list, n < 2, non-positive or
  /// non-finite weights, or a state count that overflows.
  explicit ProductSpace(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::size_t state_count() const noexcept { return states_; }
  /// Distance between consecutive sites along axis `axis` in the flat layout.
  std::size_t stride(std::size_t axis) const { return strides_.at(axis); }
  /// True when no factor is a 3-cycle.
  bool within_hypothesis() const noexcept;

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> strides_;
  std::size_t states_ = 1;
};

/// Values over the product lattice, row-major with the last axis fastest.
class ProductFunction {
 public:
  /// Throws InvalidArgument on a size mismatch or non-finite values.
  ProductFunction(ProductSpace space, std::vector<double> values);

  const ProductSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::span<const std::size_t> index) const;

 private:
  ProductSpace space_;
  std::vector<double> values_;
};

/// sum_l c_l E^(n_l)(F, F), each cycle form acting along axis l and averaged
/// over the remaining coordinates.
double product_dirichlet_form(const ProductFunction& f);
double product_dirichlet_form(const ProductSpace& space, std::span<const double> values);

/// min_l c_l lambda_{n_l}. Upper bound for twice the log-Sobolev constant.
double product_gap(const ProductSpace& space);

/// min_l c_l lambda_{n_l} / 2. Throws UnsupportedFactor if some n_l = 3.
double sharp_constant(const ProductSpace& space);

/// F(i_1, ..., i_L) = g(i_axis).
ProductFunction lift_factor(const ProductSpace& space, std::size_t axis, const CycleFunction& g);

/// Multi-start minimisation of product_dirichlet_form(F) / Ent(F^2) over
/// F >= 0, <F^2> = 1. The cap is product_gap / 2, valid with or without
/// 3-cycle factors. Throws StateSpaceTooLarge above `state_limit`.
RatioMinResult estimate_alpha_product(const ProductSpace& space, const OptimizerConfig& cfg = {},
                                      std::size_t state_limit = ProductSpace::kDefaultStateLimit);

}  // namespace cyclelsi
