#include "dptk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dptk/cutoff.hpp"
#include "dptk/error.hpp"
#include "dptk/parallel.hpp"
#include "dptk/weights.hpp"
#include "dptk/whitney.hpp"

namespace dptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_of(const GridFunction& f, const std::vector<std::size_t>& cells, double power) {
  if (cells.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t j : cells) s += power == 1.0 ? f(j) : std::pow(f(j), power);
  return s / static_cast<double>(cells.size());
}

}  // namespace

double model_residual(const GridFunction& u, const GridFunction& a, double p, double q, int m,
                      const GridFunction& phi) {
  const auto& g = u.geometry();
  if (!(phi.geometry() == g) || phi.components() != u.components() || !(a.geometry() == g))
    throw InputError("u, a and phi must share one grid and u, phi one component count");
  const int margin = std::max(2, m + 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    bool near = false;
    for (int k = 0; k < g.n; ++k) near = near || c[k] < margin || c[k] >= g.dims[k] - margin;
    if (!near) continue;
    for (int comp = 0; comp < phi.components(); ++comp)
      if (phi(i, comp) != 0.0) throw InputError("test function is not compactly supported inside the grid");
  }
  const auto Dm = derivative_norm(u, m);
  std::vector<double> acc(g.size(), 0.0);
  for (const auto& sigma : indices_of_order(g.n, m)) {
    const auto du = partial_derivative(u, sigma);
    const auto dphi = partial_derivative(phi, sigma);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double z = Dm(i);
      const double w = z == 0.0 ? 0.0 : std::pow(z, p - 2.0) + a(i) * std::pow(z, q - 2.0);
      for (int c = 0; c < u.components(); ++c) acc[i] += w * du(i, c) * dphi(i, c);
    }
  }
  double s = 0.0;
  for (double v : acc) s += v;
  return s * g.cell_volume();
}

StructureReport structure_checks(const GridFunction& a, double p, double q, double nu, int components,
                                 std::uint64_t seed, int samples) {
  if (!(nu > 0.0)) throw InputError("nu must be positive");
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  StructureReport rep;
  rep.coercivity_min = kInf;
  const auto vals = a.values();
  for (int s = 0; s < samples; ++s) {
    const double av = vals[rng() % vals.size()];
    std::vector<double> xi(components);
    const double scale = std::pow(10.0, -3.0 + 6.0 * unit());
    double n2 = 0.0;
    for (auto& x : xi) {
      x = scale * (2.0 * unit() - 1.0);
      n2 += x * x;
    }
    // One sample in every hundred is exactly zero.
    if (s % 100 == 0) {
      std::fill(xi.begin(), xi.end(), 0.0);
      n2 = 0.0;
    }
    const double z = std::sqrt(n2);
    const double w = z == 0.0 ? 0.0 : std::pow(z, p - 2.0) + av * std::pow(z, q - 2.0);
    double dot = 0.0, an2 = 0.0;
    for (double x : xi) {
      dot += w * x * x;
      an2 += w * x * w * x;
    }
    const double energy = std::pow(z, p) + av * std::pow(z, q);
    const double growth = std::pow(z, p - 1.0) + std::pow(av, 1.0 / q) * std::pow(av, (q - 1.0) / q) * std::pow(z, q - 1.0);
    if (energy > 0.0) rep.coercivity_min = std::min(rep.coercivity_min, dot / nu / energy);
    else if (dot != 0.0) rep.coercivity_min = 0.0;
    if (growth > 0.0) rep.growth_max = std::max(rep.growth_max, std::sqrt(an2) / growth);
    else if (an2 != 0.0) rep.growth_max = kInf;
  }
  if (!std::isfinite(rep.coercivity_min)) rep.coercivity_min = 1.0;
  rep.checks.push_back({"coercivity", rep.coercivity_min >= 1.0 - 1e-12, rep.coercivity_min, 1.0, 1e-12});
  rep.checks.push_back(at_most("growth", rep.growth_max, 1.0, 1e-12));
  return rep;
}

double delta_hat(const ExponentConfig& cfg) {
  const double n = cfg.n, p = cfg.p, q = cfg.q;
  const double ps = std::max(1.0, n * p / (n + p));
  const double qs = std::max(1.0, n * q / (n + q));
  double ph, qh;
  if (ps > 1.0) {
    ph = ps;
    qh = qs;
  } else if (qs > 1.0) {
    ph = std::min(0.5 * (1.0 + p), qs);
    qh = qs;
  } else {
    ph = 0.5 * (1.0 + p);
    qh = std::min(0.5 * (1.0 + q), (1.0 + cfg.alpha / (n * q)) * 0.5 * (1.0 + p));
  }
  return std::max(ph / p, qh / q);
}

ScanInputs prepare_scan(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                        const DerivedExponents& d, double delta, const TruncationData& data) {
  ScanInputs in{cfg, d, 0.0, delta_hat(cfg), u, a, GridFunction(u.geometry()), GridFunction(u.geometry()), {}};
  in.delta = delta > 0.0 ? delta : default_delta(d.delta0);
  if (in.delta < 0.5 * (1.0 + d.delta0) || in.delta >= 1.0) throw InputError("delta must lie in [(1 + delta0)/2, 1)");
  if (!(in.delta_hat < in.delta)) throw InputError("delta_hat must stay below delta");
  const auto& g = u.geometry();
  const auto Dm = derivative_norm(u, cfg.m);
  for (std::size_t i = 0; i < g.size(); ++i) in.Hm(i) = double_phase(a(i), Dm(i), cfg.p, cfg.q);
  GridFunction ones(g);
  for (double& v : ones.values()) v = 1.0;
  in.F = assemble_fields(u, a, cfg, d, ones, data).F;
  in.du.emplace(u, cfg.m - 1);
  return in;
}

namespace {

ScanReport run_scan(const ScanInputs& in, const ScanOptions& opt, bool reverse) {
  const auto& g = in.u.geometry();
  const int m = in.cfg.m, n = g.n, N = in.u.components();
  const Region omega = opt.omega ? *opt.omega : Region::box(g.lower(), g.upper());
  const auto balls = scan_balls(g, omega, opt.R0, opt.stride, opt.min_radius_cells);
  if (balls.empty()) throw InputError("ball family is empty: domain too small for R0");
  ScanReport rep;
  rep.name = reverse ? "reverse_holder" : "caccioppoli";
  rep.balls.resize(balls.size());
  const double delta = in.delta, dh = in.delta_hat;
  parallel_for(balls.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t k = b0; k < b1; ++k) {
      auto& r = rep.balls[k];
      r.center = balls[k].center;
      r.R = balls[k].R;
      const double R = r.R;
      const auto c1 = cells_in_ball(g, r.center, R);
      const auto c2 = cells_in_ball(g, r.center, 2.0 * R);
      const auto c3 = cells_in_ball(g, r.center, 3.0 * R);
      r.lhs = mean_of(in.Hm, c1, delta);
      r.tail = 0.5 * mean_of(in.Hm, c3, delta);
      r.data = mean_of(in.F, c3, delta);
      r.power = std::pow(mean_of(in.Hm, c3, dh), delta / dh);

      WeightedCells wc;
      for (std::size_t j : c2) {
        wc.index.push_back(j);
        wc.weight.push_back(radial_cutoff(g.center(j), r.center, R, 2.0 * R, n));
      }
      const auto P = fit(*in.du, wc, m, r.center);
      double sp = 0.0;
      for (int l = 0; l < m; ++l) {
        const auto sig = indices_of_order(n, l);
        std::vector<MVPolynomial> dp;
        for (const auto& s : sig) dp.push_back(P.differentiate(s));
        const double scale = std::pow(R, m - l);
        double acc_d = 0.0, acc_1 = 0.0;
        for (std::size_t j : c2) {
          const Point x = g.center(j);
          double s2 = 0.0;
          for (std::size_t t = 0; t < sig.size(); ++t)
            for (int c = 0; c < N; ++c) {
              const double diff = in.du->get(sig[t])(j, c) - dp[t].evaluate(x, c);
              s2 += diff * diff;
            }
          const double h = double_phase(in.a(j), std::sqrt(s2) / scale, in.cfg.p, in.cfg.q);
          acc_d += std::pow(h, delta);
          acc_1 += h;
        }
        r.poly += acc_d / static_cast<double>(c2.size());
        sp += acc_1 / static_cast<double>(c2.size());
      }
      const double sp_den = std::pow(mean_of(in.Hm, c2, dh), 1.0 / dh);
      r.poincare = sp_den > 0.0 ? sp / sp_den : (sp > 0.0 ? kInf : 0.0);
      const double excess = std::max(0.0, r.lhs - r.tail);
      const double den = reverse ? r.power + r.data : r.poly + r.data;
      r.implied = den > 0.0 ? excess / den : (excess > 0.0 ? kInf : 0.0);
    }
  });
  for (const auto& r : rep.balls) {
    rep.constant = std::max(rep.constant, r.implied);
    rep.poincare_constant = std::max(rep.poincare_constant, r.poincare);
  }
  rep.checks.push_back({rep.name + "_constant_finite", std::isfinite(rep.constant), rep.constant, kInf, 0.0});
  if (!reverse)
    rep.checks.push_back({"poincare_constant_finite", std::isfinite(rep.poincare_constant), rep.poincare_constant,
                          kInf, 0.0});
  return rep;
}

}  // namespace

ScanReport caccioppoli_scan(const ScanInputs& in, const ScanOptions& opt) { return run_scan(in, opt, false); }
ScanReport reverse_holder_scan(const ScanInputs& in, const ScanOptions& opt) { return run_scan(in, opt, true); }

SelfImproveReport self_improve(const ScanInputs& in, const ScanOptions& opt, std::optional<double> kappa_override) {
  SelfImproveReport rep;
  const auto& g = in.u.geometry();
  auto stage_fail = [&](const std::string& stage) {
    rep.failed_stage = stage;
    rep.checks.push_back({"stage." + stage, false, 0.0, 0.0, 0.0});
    return rep;
  };
  const auto dchecks = validate_derived(in.cfg, in.derived);
  for (const auto& c : dchecks) rep.checks.push_back({"exponents." + c.name, c.pass, c.measured, c.bound, c.tolerance});
  if (!all_pass(dchecks)) return stage_fail("exponents");

  rep.reverse_holder = reverse_holder_scan(in, opt);
  if (!std::isfinite(rep.reverse_holder.constant)) return stage_fail("reverse_holder");
  // A vanishing constant still needs a positive certificate input.
  const double A = std::max(rep.reverse_holder.constant, 1e-12);

  rep.kappa = kappa_override ? *kappa_override : in.delta_hat / in.delta;
  rep.eps0 = 1.0 / in.derived.delta0 - 1.0;
  rep.certificate = gehring_constants(g.n, A, rep.kappa, rep.eps0, 0.5);
  rep.checks.insert(rep.checks.end(), rep.certificate.checks.begin(), rep.certificate.checks.end());
  if (!all_pass(rep.certificate.checks)) return stage_fail("certificate");

  GridFunction f1(g), f2(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f1(i) = std::pow(in.Hm(i), in.delta);
    f2(i) = A * std::pow(in.F(i), in.delta);
  }
  GehringScanConfig sc;
  sc.R0 = opt.R0;
  sc.stride = opt.stride;
  sc.min_radius_cells = opt.min_radius_cells;
  const Region omega = opt.omega ? *opt.omega : Region::box(g.lower(), g.upper());
  rep.gehring = gehring_verify(f1, f2, rep.certificate, omega, rep.certificate.eps_max, sc);
  rep.checks.push_back({"premise_on_every_ball", rep.gehring.premise_fraction == 1.0, rep.gehring.premise_fraction, 1.0, 0.0});
  if (rep.gehring.premise_fraction < 1.0) return stage_fail("premise");
  rep.checks.push_back(at_most("conclusion_failures", double(rep.gehring.conclusion_failures), 0.0));
  rep.checks.push_back(positive("eps_max", rep.certificate.eps_max));
  rep.corollary_mode = in.cfg.beta_src == 1.0;
  rep.improved_exponent = in.delta * (1.0 + rep.certificate.eps_max);
  return rep;
}

}  // namespace dptk
