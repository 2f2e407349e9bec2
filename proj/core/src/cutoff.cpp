#include "dptk/cutoff.hpp"

#include <cmath>

#include "dptk/error.hpp"

namespace dptk {

namespace {
// exp(-1/t) is below 1e-200 here; treat the step as exactly flat.
constexpr double kFlat = 0.002;
}

double smooth_step(double t) {
  if (t <= kFlat) return 0.0;
  if (t >= 1.0 - kFlat) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

Jet smooth_step(const Jet& t) {
  const double t0 = t.value();
  if (t0 <= kFlat) return Jet::constant(t.dim(), t.order(), 0.0);
  if (t0 >= 1.0 - kFlat) return Jet::constant(t.dim(), t.order(), 1.0);
  const Jet e = (t.reciprocal() - (1.0 - t).reciprocal()).exp();
  return (1.0 + e).reciprocal();
}

double radial_cutoff(const Point& x, const Point& center, double inner, double outer, int n) {
  if (!(outer > inner) || inner < 0.0) throw InputError("cutoff radii must satisfy 0 <= inner < outer");
  const double d = distance(x, center, n);
  return 1.0 - smooth_step((d - inner) / (outer - inner));
}

RadialProfile radial_cutoff_profile(double radius, double inner, double outer) {
  if (!(outer > inner) || inner < 0.0) throw InputError("cutoff radii must satisfy 0 <= inner < outer");
  const double w = outer - inner;
  const double t = (radius - inner) / w;
  if (t <= kFlat) return {1.0, 0.0, 0.0};
  if (t >= 1.0 - kFlat) return {0.0, 0.0, 0.0};
  // s = 1 / (1 + e^E), E = 1/t - 1/(1-t)
  const double u = 1.0 - t;
  const double s = smooth_step(t);
  const double e1 = -1.0 / (t * t) - 1.0 / (u * u);
  const double e2 = 2.0 / (t * t * t) - 2.0 / (u * u * u);
  const double s1 = -s * (1.0 - s) * e1;
  const double s2 = -s1 * (1.0 - 2.0 * s) * e1 - s * (1.0 - s) * e2;
  return {1.0 - s, -s1 / w, -s2 / (w * w)};
}

Jet radial_cutoff_jet(const Point& x, const Point& center, double inner, double outer, int n, int order) {
  if (!(outer > inner) || inner < 0.0) throw InputError("cutoff radii must satisfy 0 <= inner < outer");
  const double d0 = distance(x, center, n);
  // Constant inside the plateau; also keeps sqrt away from 0.
  if (d0 <= inner + kFlat * (outer - inner)) return Jet::constant(n, order, 1.0);
  if (d0 >= outer) return Jet::constant(n, order, 0.0);
  Jet r2 = Jet::constant(n, order, 0.0);
  for (int k = 0; k < n; ++k) {
    const Jet dx = Jet::variable(n, order, k, x[k]) - center[k];
    r2 += dx * dx;
  }
  const Jet t = (r2.sqrt() - inner) * (1.0 / (outer - inner));
  return 1.0 - smooth_step(t);
}

GridFunction sample_cutoff(const GridGeometry& g, const Point& center, double inner, double outer) {
  return sample(g, [&](const Point& x) { return radial_cutoff(x, center, inner, outer, g.n); });
}

}  // namespace dptk
