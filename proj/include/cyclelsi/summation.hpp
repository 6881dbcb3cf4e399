#pragma once

#include <cmath>
#include <span>

namespace cyclelsi {

// Neumaier-compensated accumulator. Error is O(eps) independent of length.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class F>
double compensated_mean(std::size_t n, F&& term) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(term(i));
  return acc.value() / static_cast<double>(n);
}

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace cyclelsi
