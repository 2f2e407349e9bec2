#include "dptk/ratio.hpp"

#include <algorithm>

namespace dptk {

RatioStats sup_ratio(std::span<const double> num, std::span<const double> den, std::span<const std::size_t> indices) {
  RatioStats s;
  for (std::size_t i : indices) {
    if (den[i] > 0.0) {
      s.sup = std::max(s.sup, num[i] / den[i]);
      ++s.evaluated;
    } else if (num[i] == 0.0) {
      ++s.evaluated;
    } else {
      ++s.excluded;
    }
  }
  return s;
}

bool refinement_stable(double coarse, double fine, double tol) {
  if (coarse == 0.0 && fine == 0.0) return true;
  if (!(coarse > 0.0) || !std::isfinite(fine)) return false;
  return std::abs(fine / coarse - 1.0) < tol;
}

}  // namespace dptk
