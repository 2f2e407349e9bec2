#pragma once

#include <cmath>
#include <vector>

#include "dptk/exponents.hpp"
#include "dptk/grid.hpp"

namespace dptk {

struct SeminormEstimate {
  double value = 1.0;
  bool diverging = false;
  // Estimates on the full lattice and on stride-2, 4, 8 sublattices (finest first).
  std::vector<double> levels;
};

// sup a(x) / (a(y) + |x - y|^alpha) over lattice pairs in the region, floored at 1.
double seminorm_sup(const GridFunction& a, double alpha, const Region& region, int stride = 1);

// Flags divergence when the estimate on the full lattice exceeds twice the
// estimate on the coarsest available sublattice.
SeminormEstimate estimate_seminorm(const GridFunction& a, double alpha, const Region& region);

// min_y a(y) + |x - y|^alpha over lattice points y. Throws InputError on a
// diverging seminorm unless `check` is false.
GridFunction regularize(const GridFunction& a, double alpha, bool check = true);

struct Weight {
  GridFunction a;
  double alpha = 1.0;
  double seminorm = 1.0;
};

Weight make_weight(GridFunction a, double alpha);

// |z|^{gamma_p} + a^{gamma_q / q} |z|^{gamma_q} with the exponents of order ell.
double double_phase(double a_value, double z_norm, const ExponentConfig& cfg, const DerivedExponents& d, int ell);
// Same integrand with explicit exponents: |z|^p + a^{weight_power}|z|^q.
inline double double_phase(double a_value, double z_norm, double p, double q, double weight_power = 1.0) {
  const double aw = a_value == 0.0 ? 0.0 : std::pow(a_value, weight_power);
  return std::pow(z_norm, p) + aw * std::pow(z_norm, q);
}
}  // namespace dptk
