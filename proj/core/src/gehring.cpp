#include "dptk/gehring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dptk/error.hpp"
#include "dptk/parallel.hpp"
#include "dptk/whitney.hpp"

namespace dptk {

GehringCertificate gehring_constants(int n, double A, double kappa, double eps0, double theta_rh) {
  if (n < 1 || n > kMaxDim) throw InputError("dimension must be 1, 2 or 3");
  if (!(kappa > 0.0 && kappa < 1.0)) throw InputError("kappa must lie in (0, 1)");
  if (!(A > 0.0) || !std::isfinite(A)) throw InputError("A must be positive and finite");
  if (!(eps0 > 0.0)) throw InputError("eps0 must be positive");
  if (!(theta_rh >= 0.0 && theta_rh < 1.0)) throw InputError("theta_rh must lie in [0, 1)");
  GehringCertificate c;
  c.n = n;
  c.A = A;
  c.kappa = kappa;
  c.eps0 = eps0;
  c.theta_rh = theta_rh;
  c.A_eff = A / (1.0 - theta_rh);
  c.d = 0.5 * (1.0 + kappa);
  c.theta = std::pow(1.0 / (4.0 * c.A_eff + 1.0), 1.0 / c.d);
  c.c1 = 2.0 * std::pow(5.0, n) * c.A_eff;
  c.c2 = 2.0 * std::pow(5.0, n);
  c.c_star = 4.0 * c.c1 * std::pow(4.0 * c.A_eff + 1.0, 1.0 + 2.0 * eps0);
  c.eps_max = std::min((1.0 - kappa) / c.c_star, eps0);
  c.checks.push_back(positive("d_above_kappa", c.d - kappa));
  c.checks.push_back(positive("d_below_one", 1.0 - c.d));
  c.checks.push_back(positive("theta_in_unit_interval", std::min(c.theta, 1.0 - c.theta)));
  c.checks.push_back(positive("eps_max_positive", c.eps_max));
  c.checks.push_back(at_most("absorption", c.A_eff * std::pow(c.theta, c.d) + 0.25, 0.5, 1e-15));
  return c;
}

double iteration_constant(double tau, double gamma) {
  if (!(tau >= 0.0 && tau < 1.0)) throw InputError("iteration constant needs 0 <= tau < 1");
  if (gamma < 0.0) throw InputError("iteration constant needs gamma >= 0");
  if (tau == 0.0) return std::pow(2.0, gamma);
  double sum = 0.0;
  for (long i = 0;; ++i) {
    const double term = std::pow(tau, double(i)) * std::pow(double(i + 1) * double(i + 2), gamma);
    sum += term;
    // Terms decrease past the peak; stop once the geometric tail bound is tiny.
    const double peak = gamma > 0.0 ? -2.0 * gamma / std::log(tau) : 0.0;
    if (double(i) > peak && term / (1.0 - tau) < 1e-12) break;
    if (i > 100000000) throw InputError("iteration constant did not converge");
  }
  return sum;
}

ConclusionConstants conclusion_constants(const GehringCertificate& cert, double eps) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  ConclusionConstants k;
  const int n = cert.n;
  k.c_hat = iteration_constant(0.5, n * eps);
  k.C1 = std::pow(std::pow(3.0, n) * std::pow(45.0, n * eps) * k.c_hat, 1.0 / (1.0 + eps));
  k.C2 = std::pow(std::pow(3.0, n + 1) * std::pow(4.0, eps) * cert.c2, 1.0 / (1.0 + eps));
  return k;
}

namespace {

// Gauss-Legendre, 5 points on [-1, 1].
constexpr std::array<double, 5> kGx{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                     0.9061798459386640};
constexpr std::array<double, 5> kGw{0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};

// int_a^b |r| mu^{r-1} dmu, by quadrature in t = log mu.
double power_density(double a, double b, double r) {
  if (!(b > a)) return 0.0;
  const double ta = std::log(a), tb = std::log(b);
  const double mid = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
  double s = 0.0;
  for (int k = 0; k < 5; ++k) s += kGw[k] * std::exp(r * (mid + half * kGx[k]));
  return std::abs(r) * half * s;
}

}  // namespace

double layer_cake_check(const GridFunction& h, double r, const Region& region, int nodes) {
  if (r == 0.0) throw InputError("layer cake exponent must be nonzero");
  if (nodes < 2) throw InputError("layer cake needs at least two nodes");
  const auto& g = h.geometry();
  const auto idx = region.indices(g);
  double top = 0.0;
  for (std::size_t i : idx) {
    if (h(i) < 0.0) throw InputError("layer cake needs a nonnegative function");
    top = std::max(top, h(i));
  }
  if (top == 0.0) return 0.0;
  const double lo = 1e-8 * top;
  std::vector<double> mu(nodes);
  for (int k = 0; k < nodes; ++k) mu[k] = lo * std::pow(top / lo, double(k) / (nodes - 1));
  double worst = 0.0;
  for (std::size_t i : idx) {
    const double v = h(i);
    if (r < 0.0 && v == 0.0) continue;
    double integral = 0.0;
    if (r > 0.0) {
      // chi_{h > mu}: tail [0, lo] in closed form, then nodes up to v.
      integral = std::pow(std::min(v, lo), r);
      for (int k = 0; k + 1 < nodes && mu[k] < v; ++k) integral += power_density(mu[k], std::min(mu[k + 1], v), r);
    } else {
      // chi_{h <= mu}: nodes from v up to top, closed-form tail beyond top.
      for (int k = 0; k + 1 < nodes; ++k) {
        if (mu[k + 1] <= v) continue;
        integral += power_density(std::max(mu[k], v), mu[k + 1], r);
      }
      if (v < lo) integral += power_density(v, lo, r);
      integral += std::pow(top, r);
    }
    const double exact = std::pow(v, r);
    worst = std::max(worst, std::abs(integral - exact) / exact);
  }
  return worst;
}

IterationLemmaReport iteration_lemma_check(const std::vector<double>& s, const std::vector<double>& h, double tau,
                                           double C1, double C2, double gamma) {
  if (s.size() != h.size() || s.size() < 2) throw InputError("iteration lemma needs matching samples");
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!(s[k] > s[k - 1])) throw InputError("radii must increase");
  IterationLemmaReport rep;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const double rhs = tau * h[b] + C1 + C2 / std::pow(s[b] - s[a], gamma);
      if (h[a] > rhs * (1.0 + 1e-12)) ++rep.premise_violations;
    }
  rep.value = h.front();
  rep.bound = C1 / (1.0 - tau) + iteration_constant(tau, gamma) * C2 / std::pow(s.back() - s.front(), gamma);
  rep.conclusion_asserted = rep.premise_violations == 0;
  rep.pass = rep.conclusion_asserted && rep.value <= rep.bound * (1.0 + 1e-12);
  return rep;
}

namespace {

bool ball_inside(const GridGeometry& g, const Region& omega, const Point& c, double r) {
  switch (omega.kind()) {
    case Region::Kind::ball: return distance(c, omega.center(), g.n) + r < omega.radius();
    case Region::Kind::box:
      for (int k = 0; k < g.n; ++k)
        if (c[k] - r <= omega.lo()[k] || c[k] + r >= omega.hi()[k]) return false;
      return true;
    case Region::Kind::mask: {
      const auto up = g.upper();
      for (int k = 0; k < g.n; ++k)
        if (c[k] - r <= g.origin[k] || c[k] + r >= up[k]) return false;
      for (std::size_t j : cells_in_ball(g, c, r))
        if (!omega.mask_cells()[j]) return false;
      return true;
    }
  }
  return false;
}

double mean_pow(const GridFunction& f, const std::vector<std::size_t>& cells, double power) {
  double s = 0.0;
  for (std::size_t j : cells) s += power == 1.0 ? f(j) : std::pow(f(j), power);
  return s / static_cast<double>(cells.size());
}

}  // namespace

std::vector<ScanBall> scan_balls(const GridGeometry& g, const Region& omega, double R0, int stride,
                                 double min_radius_cells) {
  if (stride < 1 || !(R0 > 0.0)) throw InputError("bad scan configuration");
  std::vector<double> radii;
  for (double R = R0; R >= min_radius_cells * g.spacing; R *= 0.5) radii.push_back(R);
  std::vector<ScanBall> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    bool on = true;
    for (int k = 0; k < g.n; ++k) on = on && c[k] % stride == 0;
    if (!on) continue;
    const Point x = g.center(i);
    for (double R : radii)
      if (ball_inside(g, omega, x, 3.0 * R)) out.push_back({x, R});
  }
  return out;
}

GehringScan gehring_verify(const GridFunction& f1, const GridFunction& f2, const GehringCertificate& cert,
                           const Region& omega, double eps, const GehringScanConfig& scan) {
  const auto& g = f1.geometry();
  if (!(f2.geometry() == g)) throw InputError("f1 and f2 must share a grid");
  if (g.n != cert.n) throw InputError("certificate dimension does not match the grid");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (f1(i) < 0.0 || f2(i) < 0.0) throw InputError("f1 and f2 must be nonnegative");

  GehringScan out;
  out.eps = eps;
  out.outside_certificate = eps > cert.eps_max;
  out.constants = conclusion_constants(cert, eps);

  for (const auto& b : scan_balls(g, omega, scan.R0, scan.stride, scan.min_radius_cells)) {
    BallPairRecord rec;
    rec.center = b.center;
    rec.R = b.R;
    out.balls.push_back(rec);
  }
  if (out.balls.empty()) throw InputError("no ball pair fits inside the domain");

  const double theta = cert.theta_rh, kappa = cert.kappa, A = cert.A;
  parallel_for(out.balls.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t k = b0; k < b1; ++k) {
      auto& b = out.balls[k];
      const auto inner = cells_in_ball(g, b.center, b.R);
      const auto outer = cells_in_ball(g, b.center, 3.0 * b.R);
      if (inner.empty() || outer.empty()) continue;
      b.mean_R = mean_pow(f1, inner, 1.0);
      b.mean_3R = mean_pow(f1, outer, 1.0);
      b.power_mean = std::pow(mean_pow(f1, outer, kappa), 1.0 / kappa);
      b.data_mean = mean_pow(f2, outer, 1.0);
      b.premise_applies = !scan.conditional || b.mean_3R <= b.mean_R;
      const double excess = std::max(0.0, b.mean_R - theta * b.mean_3R - b.data_mean);
      b.implied_A = b.power_mean > 0.0 ? excess / b.power_mean : (excess > 0.0 ? HUGE_VAL : 0.0);
      const double rhs = A * b.power_mean + b.data_mean + theta * b.mean_3R;
      b.premise = b.mean_R <= rhs * (1.0 + 1e-12);
      b.improved = std::pow(mean_pow(f1, inner, 1.0 + eps), 1.0 / (1.0 + eps));
      const double gmean = std::pow(mean_pow(f2, outer, 1.0 + eps), 1.0 / (1.0 + eps)) / (1.0 - theta);
      b.conclusion_rhs = out.constants.C1 * b.mean_3R + out.constants.C2 * gmean;
      b.conclusion = b.improved <= b.conclusion_rhs * (1.0 + 1e-12);
    }
  });

  std::size_t applicable = 0, passing = 0;
  for (const auto& b : out.balls) {
    if (!b.premise_applies) continue;
    ++applicable;
    out.measured_A = std::max(out.measured_A, b.implied_A);
    if (!b.premise) continue;
    ++passing;
    if (!b.conclusion) ++out.conclusion_failures;
    if (b.conclusion_rhs > 0.0) out.conclusion_ratio = std::max(out.conclusion_ratio, b.improved / b.conclusion_rhs);
  }
  out.premise_fraction = applicable ? double(passing) / double(applicable) : 1.0;
  return out;
}

double ball_mean(const GridFunction& f, const Point& x, double rho) {
  const auto& g = f.geometry();
  const double h = g.spacing;
  double num = 0.0, den = 0.0;
  for (std::size_t j : cells_in_ball(g, x, rho + 0.5 * h)) {
    const double w = std::clamp((rho - distance(g.center(j), x, g.n)) / h + 0.5, 0.0, 1.0);
    num += w * f(j);
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

ExitReport exit_radii(const GridFunction& f, double lambda, double r1, double r2, const Point& center, double R) {
  const auto& g = f.geometry();
  const int n = g.n;
  if (!(r2 > r1) || r1 < R || r2 > 3.0 * R) throw InputError("exit radii need R <= r1 < r2 <= 3R");
  ExitReport rep;
  double total = 0.0;
  for (std::size_t j : cells_in_ball(g, center, 3.0 * R)) total += f(j) * g.cell_volume();
  const double omega = ball_volume(1.0, n);
  rep.lambda0 = std::pow(15.0, n) / (omega * std::pow(r2 - r1, n)) * total;
  if (!(lambda > rep.lambda0)) throw InputError("lambda must exceed the exit floor");
  const double top = (r2 - r1) / 15.0;
  constexpr int kSamples = 64;
  for (std::size_t j : cells_in_ball(g, center, r1)) {
    if (!(f(j) > lambda)) continue;
    const Point x = g.center(j);
    int last = -1;
    for (int k = 1; k <= kSamples; ++k)
      if (ball_mean(f, x, top * k / kSamples) > lambda) last = k;
    if (last == kSamples) {
      ++rep.skipped;
      continue;
    }
    double lo = last <= 0 ? 0.0 : top * last / kSamples, hi = top * (last + 1) / kSamples;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ball_mean(f, x, mid) > lambda ? lo : hi) = mid;
    }
    ExitRadius e{x, hi, true};
    for (int k = 0; k <= kSamples; ++k) {
      const double rho = hi + (top - hi) * k / kSamples;
      if (ball_mean(f, x, rho) > lambda * (1.0 + 1e-12)) e.verified = false;
    }
    rep.radii.push_back(e);
  }
  std::vector<std::size_t> order(rep.radii.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rep.radii[a].rho > rep.radii[b].rho; });
  for (std::size_t k : order) {
    bool free = true;
    for (std::size_t s : rep.vitali)
      if (distance(rep.radii[k].x, rep.radii[s].x, n) < 3.0 * (rep.radii[k].rho + rep.radii[s].rho)) {
        free = false;
        break;
      }
    if (free) rep.vitali.push_back(k);
  }
  for (std::size_t a = 0; a < rep.vitali.size(); ++a)
    for (std::size_t b = a + 1; b < rep.vitali.size(); ++b) {
      const auto& A = rep.radii[rep.vitali[a]];
      const auto& B = rep.radii[rep.vitali[b]];
      if (distance(A.x, B.x, n) < 3.0 * (A.rho + B.rho)) rep.disjoint = false;
    }
  return rep;
}

}  // namespace dptk
