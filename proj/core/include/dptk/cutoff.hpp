#pragma once

#include "dptk/grid.hpp"
#include "dptk/jet.hpp"

namespace dptk {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, flat at both ends.
double smooth_step(double t);
Jet smooth_step(const Jet& t);

// 1 on |x - c| <= inner, 0 on |x - c| >= outer.
double radial_cutoff(const Point& x, const Point& center, double inner, double outer, int n);
// Value and first two derivatives of the cutoff profile in the radius.
struct RadialProfile {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};
RadialProfile radial_cutoff_profile(double radius, double inner, double outer);
Jet radial_cutoff_jet(const Point& x, const Point& center, double inner, double outer, int n, int order);

GridFunction sample_cutoff(const GridGeometry& g, const Point& center, double inner, double outer);

}  // namespace dptk
