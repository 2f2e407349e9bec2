#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dptk {

// Pointwise num/den over a set of indices. 0/0 counts as 0; x/0 with x > 0
// is excluded and counted.
struct RatioStats {
  double sup = 0.0;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;

  // Finite, and at most 0.1% of the points were excluded.
  bool acceptable() const { return std::isfinite(sup) && excluded * 1000 <= evaluated + excluded; }
};

RatioStats sup_ratio(std::span<const double> num, std::span<const double> den, std::span<const std::size_t> indices);

// |fine / coarse - 1| < tol, with 0 ~ 0.
bool refinement_stable(double coarse, double fine, double tol = 0.2);

}  // namespace dptk
