#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dptk/check.hpp"
#include "dptk/grid.hpp"
#include "dptk/report.hpp"
#include "dptk/suites.hpp"

namespace dptk::suites {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline int cells_2d(const SuiteOptions& opt) { return opt.grid_size > 0 ? opt.grid_size : 128; }
inline int cells_1d(const SuiteOptions& opt) { return 2 * cells_2d(opt); }

// |measured - target| <= tol
inline Check near(std::string name, double measured, double target, double tol) {
  return {std::move(name), std::abs(measured - target) <= tol, measured, target, tol};
}

inline Check holds(std::string name, bool ok, double measured = 0.0, double bound = 0.0) {
  return {std::move(name), ok, measured, bound, 0.0};
}

inline Check finite(std::string name, double v) {
  return {std::move(name), std::isfinite(v), v, INFINITY, 0.0};
}

// fine/coarse within 1 +- tol; two zeros agree.
inline Check stable(std::string name, double coarse, double fine, double tol = 0.2) {
  const bool zero = coarse == 0.0 && fine == 0.0;
  const double ratio = zero ? 1.0 : fine / coarse;
  return {std::move(name), std::isfinite(ratio) && std::abs(ratio - 1.0) < tol, ratio, 1.0, tol};
}

Report start(const std::string& suite, const SuiteOptions& opt);

// min_y |y|^alpha + |x - y|^alpha over the lattice, i.e. the regularized power weight.
GridFunction power_weight(const GridGeometry& g, double alpha);
GridFunction constant(const GridGeometry& g, double c);

std::vector<Report> grid(const SuiteOptions& opt);
std::vector<Report> weights(const SuiteOptions& opt);
std::vector<Report> exponents(const SuiteOptions& opt);
std::vector<Report> maximal(const SuiteOptions& opt);
std::vector<Report> potentials(const SuiteOptions& opt);
std::vector<Report> sobolev_poincare(const SuiteOptions& opt);
std::vector<Report> meanpoly(const SuiteOptions& opt);
std::vector<Report> whitney(const SuiteOptions& opt);
std::vector<Report> truncation(const SuiteOptions& opt);
std::vector<Report> gehring(const SuiteOptions& opt);
std::vector<Report> pipeline(const SuiteOptions& opt);

}  // namespace dptk::suites
