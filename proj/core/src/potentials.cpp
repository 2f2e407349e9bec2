#include "dptk/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "dptk/error.hpp"
#include "dptk/exponents.hpp"
#include "dptk/parallel.hpp"
#include "dptk/weights.hpp"

namespace dptk {

namespace {

double euclid(const GridFunction& u, std::size_t i) {
  double s = 0.0;
  for (int c = 0; c < u.components(); ++c) s += u(i, c) * u(i, c);
  return std::sqrt(s);
}

double lattice_norm(const GridFunction& u, const Region& region, double power) {
  return std::pow(integrate(u, region, power)[0], 1.0 / power);
}

double max_abs_lower_averages(const GridFunction& u, const Region& ball, const GridFunction& eta, int order) {
  double res = 0.0;
  for (int k = 0; k < order; ++k)
    for (const auto& sigma : indices_of_order(u.dim(), k))
      for (double v : weighted_average(k == 0 ? u : partial_derivative(u, sigma), ball, eta))
        res = std::max(res, std::abs(v));
  return res;
}

double scale_of(const GridFunction& u) {
  double s = 0.0;
  for (double v : u.values()) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

double self_cell_integral(int n, double h, double gamma) {
  if (n == 1) return 2.0 * std::pow(h / 2.0, gamma) / gamma;
  constexpr int kSub = 64;
  const double w = h / kSub;
  double total = 0.0;
  const int k3 = n == 3 ? kSub : 1;
  for (int i = 0; i < kSub; ++i)
    for (int j = 0; j < kSub; ++j)
      for (int k = 0; k < k3; ++k) {
        const double x = -h / 2 + (i + 0.5) * w;
        const double y = -h / 2 + (j + 0.5) * w;
        const double z = n == 3 ? -h / 2 + (k + 0.5) * w : 0.0;
        total += std::pow(std::sqrt(x * x + y * y + z * z), gamma - n);
      }
  return total * std::pow(w, n);
}

GridFunction riesz_potential(const GridFunction& f, double gamma, const Region& ball) {
  const auto& g = f.geometry();
  if (!(gamma > 0.0 && gamma < g.n)) throw InputError("Riesz order gamma must lie in (0, n)");
  std::array<int, kMaxDim> ext{1, 1, 1};
  for (int k = 0; k < g.n; ++k) ext[k] = g.dims[k];
  std::vector<double> kernel(static_cast<std::size_t>(ext[0]) * ext[1] * ext[2]);
  const double vol = g.cell_volume();
  for (int i = 0; i < ext[0]; ++i)
    for (int j = 0; j < ext[1]; ++j)
      for (int k = 0; k < ext[2]; ++k) {
        const double d = g.spacing * std::sqrt(double(i * i + j * j + k * k));
        kernel[(static_cast<std::size_t>(i) * ext[1] + j) * ext[2] + k] = vol * std::pow(d, gamma - g.n);
      }
  kernel[0] = self_cell_integral(g.n, g.spacing, gamma);
  struct Source {
    std::array<int, kMaxDim> c;
    double v;
  };
  std::vector<Source> src;
  for (std::size_t idx : ball.indices(g)) {
    const double v = euclid(f, idx);
    if (v != 0.0) src.push_back({g.coords(idx), v});
  }
  GridFunction out(g);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x) {
      const auto c = g.coords(x);
      double s = 0.0;
      for (const auto& y : src) {
        const std::size_t t = (static_cast<std::size_t>(std::abs(c[0] - y.c[0])) * ext[1] + std::abs(c[1] - y.c[1])) *
                                  ext[2] +
                              std::abs(c[2] - y.c[2]);
        s += kernel[t] * y.v;
      }
      out(x) = s;
    }
  });
  return out;
}

StrongTypeReport strong_type_report(const GridFunction& f, double r, double gamma, const Region& ball) {
  const int n = f.dim();
  if (!(r > 1.0 && std::isfinite(r))) throw InputError("strong type needs 1 < r < inf");
  if (!(gamma * r < n)) throw InputError("strong type needs gamma < n / r");
  const double target = n * r / (n - gamma * r);
  StrongTypeReport rep;
  rep.potential_norm = lattice_norm(riesz_potential(f, gamma, ball), ball, target);
  rep.data_norm = lattice_norm(abs(f), ball, r);
  rep.ratio = rep.data_norm > 0.0 ? rep.potential_norm / rep.data_norm : 0.0;
  return rep;
}

SplitReport weighted_split_check(const GridFunction& f, const GridFunction& a, double p, double q, double alpha,
                                 const Region& ball) {
  if (ball.kind() != Region::Kind::ball) throw InputError("weighted split needs a ball region");
  const auto& g = f.geometry();
  if (q / p > 1.0 + alpha / g.n) throw InputError("weighted split needs q/p <= 1 + alpha/n");
  SplitReport rep;
  rep.beta = riesz_gap(p, q, g.n, alpha).beta;
  rep.seminorm = seminorm_sup(a, alpha, ball);
  const double gap = 1.0 + alpha / q - rep.beta;
  rep.reference = std::pow(rep.seminorm, 1.0 / q) * std::max(1.0, std::pow(2.0, gap));
  const GridFunction a1q = pow(a, 1.0 / q);
  const auto i1 = riesz_potential(f, 1.0, ball);
  const auto i1w = riesz_potential(a1q * abs(f), 1.0, ball);
  const auto ib = riesz_potential(f, rep.beta, ball);
  const double rscale = std::pow(ball.radius(), gap);
  std::vector<double> num(g.size()), den(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    num[i] = a1q(i) * i1(i);
    den[i] = i1w(i) + rscale * ib(i);
  }
  rep.ratio = sup_ratio(num, den, ball.indices(g));
  rep.pass = rep.ratio.acceptable() && rep.ratio.sup <= rep.reference * (1.0 + 1e-12);
  return rep;
}

PointwiseRieszReport pointwise_riesz_bound_check(const GridFunction& u, const Region& ball, const GridFunction& eta) {
  if (ball.kind() != Region::Kind::ball) throw InputError("pointwise Riesz bound needs a ball region");
  PointwiseRieszReport rep;
  rep.residual = max_abs_lower_averages(u, ball, eta, 1);
  if (rep.residual > 1e-8 * (1.0 + scale_of(u)))
    throw InputError("weighted mean of u is " + std::to_string(rep.residual) + ", not zero");
  const auto pot = riesz_potential(derivative_norm(u, 1), 1.0, ball);
  std::vector<double> num(u.points());
  for (std::size_t i = 0; i < u.points(); ++i) num[i] = euclid(u, i);
  rep.ratio = sup_ratio(num, pot.values(), ball.indices(u.geometry()));
  rep.pass = rep.ratio.acceptable();
  return rep;
}

SobolevPoincareReport sobolev_poincare_report(const GridFunction& u, const GridFunction& a, double p, double q,
                                              double alpha, const Region& ball, const GridFunction& eta, int order,
                                              double r_target) {
  if (ball.kind() != Region::Kind::ball) throw InputError("Sobolev-Poincare report needs a ball region");
  const int n = u.dim();
  if (order < 1) throw InputError("Sobolev-Poincare order must be >= 1");
  if (!(1.0 < p && p <= q)) throw InputError("Sobolev-Poincare needs 1 < p <= q");
  const double top = sobolev_exponent(q, order, n);
  const bool closed = order * q < n;
  if (!(r_target >= 1.0) || (closed ? r_target > top : !std::isfinite(r_target)))
    throw InputError("target exponent r outside the admissible range");
  SobolevPoincareReport rep;
  rep.r = r_target;
  rep.residual = max_abs_lower_averages(u, ball, eta, order);
  if (rep.residual > 1e-8 * (1.0 + scale_of(u)))
    throw InputError("weighted averages of lower derivatives are " + std::to_string(rep.residual) + ", not zero");
  if (!closed) rep.auxiliary_s = n * r_target / (n + order * r_target);
  const double R = ball.radius();
  const auto du = derivative_norm(u, order);
  const auto& g = u.geometry();
  GridFunction lhs_f(g), w_f(g);
  const double rl = std::pow(R, order);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double av = a(i);
    lhs_f(i) = (av == 0.0 ? 0.0 : std::pow(av, r_target / q)) * std::pow(euclid(u, i) / rl, r_target);
    w_f(i) = av * std::pow(du(i), q);
  }
  rep.lhs = std::pow(average(lhs_f, ball)[0], 1.0 / r_target);
  rep.rhs_weighted = std::pow(average(w_f, ball)[0], 1.0 / q);
  rep.rhs_phase = std::pow(R, alpha / q) * std::pow(average(du, ball, p)[0], 1.0 / p);
  const double rhs = rep.rhs_weighted + rep.rhs_phase;
  rep.ratio = rhs > 0.0 ? rep.lhs / rhs : 0.0;
  return rep;
}

}  // namespace dptk
