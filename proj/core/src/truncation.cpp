#include "dptk/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dptk/cutoff.hpp"
#include "dptk/error.hpp"
#include "dptk/maximal.hpp"
#include "dptk/parallel.hpp"
#include "dptk/weights.hpp"

namespace dptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean norm over components (order 0) or the full derivative array.
GridFunction order_norm(const GridFunction& u, int order) {
  if (order > 0) return derivative_norm(u, order);
  GridFunction out(u.geometry(), 1);
  for (std::size_t i = 0; i < u.points(); ++i) {
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) s += u(i, c) * u(i, c);
    out(i) = std::sqrt(s);
  }
  return out;
}

GridFunction map_field(const GridFunction& a, const GridFunction& z, const auto& f) {
  GridFunction out(z.geometry(), 1);
  for (std::size_t i = 0; i < z.points(); ++i) out(i) = f(a(i), z(i));
  return out;
}

void require_derived(const ExponentConfig& cfg, const DerivedExponents& d) {
  const auto need = static_cast<std::size_t>(cfg.m + 1);
  for (int r : {kP, kQ})
    if (d.gamma[r].size() != need || d.s_hat[r].size() != need || d.t_hat[r].size() != need)
      throw InputError("derived exponents missing for order m = " + std::to_string(cfg.m));
  if (d.beta.size() != need || !(d.delta0 > 0.0)) throw InputError("derived exponents missing delta0 / beta");
}

void add_data_term(GridFunction& acc, const std::optional<GridFunction>& f, double exponent, const char* what) {
  if (!f) return;
  if (!std::isfinite(exponent)) throw InputError(std::string("data field ") + what + " needs a finite exponent");
  acc = acc + pow(abs(*f), exponent);
}

Jet polynomial_jet(const MVPolynomial& p, const Point& x, int order, int comp) {
  const int n = p.dim();
  Jet acc = Jet::constant(n, order, 0.0);
  std::array<std::vector<Jet>, kMaxDim> powers;
  for (int k = 0; k < n; ++k) {
    powers[k].push_back(Jet::constant(n, order, 1.0));
    const Jet dx = Jet::variable(n, order, k, x[k]) - p.center()[k];
    for (int e = 1; e <= p.degree(); ++e) powers[k].push_back(powers[k].back() * dx);
  }
  for (const auto& tau : p.indices()) {
    const double c = p.coefficient(tau, comp);
    if (c == 0.0) continue;
    Jet term = Jet::constant(n, order, c);
    for (int k = 0; k < n; ++k)
      if (tau[k] > 0) term = term * powers[k][tau[k]];
    acc += term;
  }
  return acc;
}

double array_norm(const std::map<MultiIndex, GridFunction>& d, int n, int order, std::size_t cell) {
  double s = 0.0;
  for (const auto& sigma : indices_of_order(n, order)) {
    const auto& f = d.at(sigma);
    for (int c = 0; c < f.components(); ++c) s += f(cell, c) * f(cell, c);
  }
  return std::sqrt(s);
}

}  // namespace

double default_delta(double delta0) {
  const double mid = 0.5 * (1.0 + delta0);
  return mid + 0.9 * (1.0 - mid);
}

double resolved_delta(const TruncationConfig& t, const DerivedExponents& d) {
  const double delta = t.delta > 0.0 ? t.delta : default_delta(d.delta0);
  if (delta < 0.5 * (1.0 + d.delta0) || delta >= 1.0)
    throw InputError("delta must lie in [(1 + delta0)/2, 1)");
  return delta;
}

GridFunction outer_cutoff(const GridGeometry& g, const TruncationConfig& t) {
  return sample_cutoff(g, t.center, 2.0 * t.R, 3.0 * t.R);
}

TruncationFields assemble_fields(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                                 const DerivedExponents& d, const GridFunction& cutoff, const TruncationData& data) {
  require_derived(cfg, d);
  const auto& g = u.geometry();
  if (!(a.geometry() == g) || !(cutoff.geometry() == g)) throw InputError("fields must share one grid");
  const int m = cfg.m;
  const double d0 = d.delta0;
  GridFunction sum_m(g, 1), F0(g, 1), extra(g, 1);
  for (int l = 0; l <= m; ++l) {
    const auto z = order_norm(u, l);
    const auto H = map_field(a, z, [&](double av, double zv) { return double_phase(av, zv, cfg, d, l); });
    const auto Hd = pow(H, d0);
    sum_m = sum_m + iterated_maximal(Hd * cutoff, 2 * l + 1);
    const auto inner = iterated_maximal(z * cutoff, 2 * l + 1);
    const auto frac = maximal_function(inner, {d.beta[l], MaximalMode::uncentered, std::nullopt, 1});
    F0 = F0 + pow(frac, d.gamma[kQ][l]);
    if (l < m) extra = extra + pow(iterated_maximal(Hd, 2 * l + 1), 1.0 / d0);
  }
  for (int r : {kP, kQ}) {
    for (std::size_t l = 0; l < data.g[r].size() && static_cast<int>(l) < m; ++l)
      add_data_term(F0, data.g[r][l], d.s_hat[r][l], "g");
    for (std::size_t l = 0; l < data.h[r].size() && static_cast<int>(l) <= m; ++l)
      add_data_term(F0, data.h[r][l], d.t_hat[r][l], "h");
  }
  TruncationFields out{GridFunction(g, 1), GridFunction(g, 1), F0, GridFunction(g, 1)};
  out.g = (sum_m + pow(F0, d0)) * cutoff;
  out.G = pow(maximal_function(out.g, {0.0, MaximalMode::uncentered, std::nullopt, 1}), 1.0 / d0);
  GridFunction F = F0 + extra;
  for (double& v : F.values()) v += 1.0;
  if (data.f_p) F = F + abs(*data.f_p);
  if (data.f_q) F = F + a * abs(*data.f_q);
  out.F = F;
  out.g.check_finite();
  out.G.check_finite();
  out.F.check_finite();
  return out;
}

double lambda_floor(const GridFunction& G, double delta, const Point& center, double R) {
  const double scale = std::pow(6.0, G.dim());
  const double avg = average(G, Region::ball(center, 3.0 * R), delta)[0];
  return scale * std::pow(avg, 1.0 / delta) + scale;
}

double smallness_radius(const GridFunction& u, const ExponentConfig& cfg, const DerivedExponents& d) {
  require_derived(cfg, d);
  const auto& g = u.geometry();
  double best = 0.5;
  for (int l = 0; l <= cfg.m; ++l) {
    const double gp = d.gamma[kP][l], gq = d.gamma[kQ][l], d0 = d.delta0;
    const double e = cfg.alpha / cfg.q - cfg.n * (1.0 / (gp * d0) - 1.0 / (gq * d0));
    if (!(e > 0.0)) return 0.0;
    const auto mf = iterated_maximal(order_norm(u, l), 2 * l + 1);
    const double norm = std::pow(integrate(mf, Region::whole(g), gp * d0)[0], 1.0 / (gp * d0));
    const double K = std::pow(norm, 1.0 - gp / gq) + 1.0;
    best = std::min(best, std::pow(K, -1.0 / e));
  }
  return best;
}

LevelSet level_set(const GridFunction& G, double lambda) {
  if (!(lambda > 0.0)) throw InputError("level must be positive");
  const auto& g = G.geometry();
  LevelSet ls;
  ls.lambda = lambda;
  ls.good.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ls.good[i] = G(i) <= lambda ? 1 : 0;
  std::size_t boundary = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    bool edge = false;
    for (int k = 0; k < g.n && !edge; ++k)
      for (int s : {-1, 1}) {
        auto q = c;
        q[k] += s;
        if (q[k] < 0 || q[k] >= g.dims[k]) continue;
        if (ls.good[g.index(q)] != ls.good[i]) {
          edge = true;
          break;
        }
      }
    if (edge) ++boundary;
  }
  ls.boundary_fraction = static_cast<double>(boundary) / static_cast<double>(g.size());
  return ls;
}

double stable_level(const GridFunction& coarse, const GridFunction& fine, double lambda) {
  double best = lambda, best_score = kInf;
  for (int k = 0; k <= 8; ++k) {
    const double lk = lambda * (1.0 + std::ldexp(double(k), -40));
    const double fc = level_set(coarse, lk).boundary_fraction;
    const double ff = level_set(fine, lk).boundary_fraction;
    const double score = fc > 0.0 ? ff / fc : (ff > 0.0 ? kInf : 0.0);
    if (score <= 0.65) return lk;
    if (score < best_score) {
      best_score = score;
      best = lk;
    }
  }
  return best;
}

TruncationResult truncate(const GridFunction& u, const ExponentConfig& cfg, const TruncationConfig& t,
                          const GridFunction& G, double lambda) {
  const auto& g = u.geometry();
  const int n = g.n, m = cfg.m, N = u.components();
  if (!(G.geometry() == g)) throw InputError("G must live on the grid of u");
  TruncationResult res{t, m, lambda, GridFunction(g, N), GridFunction(g, N), {}, {}, {}, {}, {}, {}, {}, {}};

  const auto eta = sample_cutoff(g, t.center, t.R, 2.0 * t.R);
  res.global_poly = fit(u, Region::ball(t.center, 2.0 * t.R), eta, m, t.center);
  res.v = (u - res.global_poly->sample(g)) * eta;
  res.good = level_set(G, lambda).good;

  std::vector<std::uint8_t> bad(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) bad[i] = res.good[i] ? 0 : 1;
  res.cover = cover(g, bad, t.R);
  res.partition.emplace(res.cover, g, bad, m);
  const auto& pu = *res.partition;
  res.dv.emplace(res.v, m);
  const auto& dv = *res.dv;

  const std::size_t K = res.cover.balls.size();
  res.local.assign(K, MVPolynomial(n, m - 1, t.center, N));
  parallel_for(K, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i)
      res.local[i] = fit(dv, pu.cells(static_cast<int>(i)), m, res.cover.balls[i].center);
  });

  // v_lambda = v - sum_i (v - P_i) psi_i; untouched on the good set.
  res.v_lambda = res.v;
  std::vector<double> assembly(g.size(), 0.0), identity(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!bad[j]) continue;
    const Point x = g.center(j);
    for (int c = 0; c < N; ++c) {
      double val = res.v(j, c), alt = 0.0;
      for (const auto& [b, psi] : pu.at(j)) {
        const double pb = res.local[b].evaluate(x, c);
        val -= (res.v(j, c) - pb) * psi;
        alt += pb * psi;
      }
      res.v_lambda(j, c) = val;
      assembly[j] = std::max(assembly[j], std::abs(val - alt) / (1.0 + std::abs(res.v(j, c))));
    }
  }

  const auto idx = indices_up_to(n, m);
  for (const auto& sigma : idx) res.dv_lambda.emplace(sigma, dv.get(sigma));
  parallel_for(g.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t j = b0; j < b1; ++j) {
      if (!bad[j]) continue;
      const Point x = g.center(j);
      const auto psis = pu.psi_jets(j);
      for (int c = 0; c < N; ++c) {
        const Jet vj = Jet::from_derivatives(n, m, [&](const MultiIndex& s) { return dv.get(s)(j, c); });
        Jet sum = Jet::constant(n, m, 0.0);
        Jet def = vj;
        for (const auto& [b, pj] : psis) {
          const Jet pjet = polynomial_jet(res.local[b], x, m, c);
          sum += pjet * pj;
          def -= (vj - pjet) * pj;
        }
        for (const auto& sigma : idx) {
          const double a = sum.derivative(sigma);
          res.dv_lambda.at(sigma)(j, c) = a;
          identity[j] =
              std::max(identity[j], std::abs(a - def.derivative(sigma)) / (1.0 + std::abs(vj.derivative(sigma))));
        }
      }
    }
  });

  std::size_t changed = 0, bad_outside = 0;
  double outside = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const bool in4 = distance(g.center(j), t.center, n) < 4.0 * t.R;
    if (bad[j] && !in4) ++bad_outside;
    for (int c = 0; c < N; ++c) {
      if (!bad[j] && std::bit_cast<std::uint64_t>(res.v_lambda(j, c)) != std::bit_cast<std::uint64_t>(res.v(j, c)))
        ++changed;
      if (!in4) outside = std::max(outside, std::abs(res.v_lambda(j, c)));
    }
  }
  const double asm_max = *std::max_element(assembly.begin(), assembly.end());
  const double id_max = *std::max_element(identity.begin(), identity.end());
  res.checks.push_back(at_most("good_set_unchanged_cells", double(changed), 0.0));
  res.checks.push_back(at_most("bad_set_outside_B4R", double(bad_outside), 0.0));
  res.checks.push_back(at_most("support_outside_B4R", outside, 0.0));
  res.checks.push_back(at_most("partition_assembly_residual", asm_max, 1e-10));
  res.checks.push_back(at_most("derivative_identity_residual", id_max, 1e-8));
  return res;
}

std::vector<DerivativeBoundRow> derivative_bounds_report(const TruncationResult& r, const GridFunction& a,
                                                         const ExponentConfig& cfg, const DerivedExponents& d) {
  const auto& g = r.v.geometry();
  const int m = r.m;
  const double R = r.config.R;
  std::vector<double> sup1(m + 1, 0.0), sup2(m + 1, 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (r.good[j]) continue;
    const bool in2 = distance(g.center(j), r.config.center, g.n) < 2.0 * R;
    const double aw = a(j) > 0.0 ? std::pow(a(j), 1.0 / cfg.q) : 0.0;
    for (int k = 0; k <= m; ++k) {
      const double dk = array_norm(r.dv_lambda, g.n, k, j);
      sup1[k] = std::max(sup1[k], dk);
      if (in2) sup2[k] = std::max(sup2[k], aw * dk);
    }
  }
  std::vector<DerivativeBoundRow> rows;
  for (int l = 0; l <= m; ++l)
    for (int k = 0; k <= l; ++k) {
      const double s = std::pow(R, l - k);
      rows.push_back({l, k, sup1[k] / (s * std::pow(r.lambda, 1.0 / d.gamma[kP][l])),
                      sup2[k] / (s * std::pow(r.lambda, 1.0 / d.gamma[kQ][l]))});
    }
  return rows;
}

double oscillation_report(const TruncationResult& r, const ExponentConfig& cfg) {
  const auto& g = r.v.geometry();
  const int m = r.m, N = r.v.components();
  const std::size_t K = r.cover.balls.size();
  std::vector<double> worst(K, 0.0);
  parallel_for(K, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i) {
      const auto& ball = r.cover.balls[i];
      const auto cells = cells_in_ball(g, ball.center, 0.75 * ball.radius);
      if (cells.empty()) continue;
      for (int l = 0; l <= m; ++l) {
        const auto sig = indices_of_order(g.n, l);
        std::vector<MVPolynomial> dp;
        for (const auto& s : sig) dp.push_back(r.local[i].differentiate(s));
        double acc = 0.0;
        for (std::size_t j : cells) {
          double s2 = 0.0;
          for (std::size_t k = 0; k < sig.size(); ++k)
            for (int c = 0; c < N; ++c) {
              const double diff = r.dv->get(sig[k])(j, c) - dp[k].evaluate(g.center(j), c);
              s2 += diff * diff;
            }
          acc += std::sqrt(s2);
        }
        acc /= static_cast<double>(cells.size());
        worst[i] = std::max(worst[i], acc / (std::pow(ball.radius, m - l) * std::pow(r.lambda, 1.0 / cfg.p)));
      }
    }
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

TransferReport polynomial_transfer_report(const TruncationResult& r) {
  const auto& g = r.v.geometry();
  const int m = r.m, n = g.n, N = r.v.components();
  const auto& B = r.cover.balls;
  const std::size_t K = B.size();
  const auto& pu = *r.partition;

  // avg_{B_j} |D^l v| and Q_i fitted on B_i with weight psi_i.
  std::vector<std::vector<double>> avg(K, std::vector<double>(m + 1, 0.0));
  std::vector<MVPolynomial> Q(K, MVPolynomial(n, m - 1, Point{}, N));
  std::vector<GridFunction> norms;
  for (int l = 0; l <= m; ++l) norms.push_back(order_norm(l == 0 ? r.v : r.v, l));
  parallel_for(K, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i) {
      const auto cells = cells_in_ball(g, B[i].center, B[i].radius);
      for (int l = 0; l <= m; ++l) {
        double s = 0.0;
        for (std::size_t j : cells) s += norms[l](j);
        avg[i][l] = cells.empty() ? 0.0 : s / static_cast<double>(cells.size());
      }
      WeightedCells wc;
      for (std::size_t j : cells) {
        double w = 0.0;
        for (const auto& [b, v] : pu.at(j))
          if (b == static_cast<int>(i)) w = v;
        wc.index.push_back(j);
        wc.weight.push_back(w);
      }
      Q[i] = fit(*r.dv, wc, m, B[i].center);
    }
  });

  struct Acc {
    std::vector<double> per_order;
    std::size_t pairs = 0, exact = 0;
  };
  std::vector<Acc> acc(K, Acc{std::vector<double>(m + 1, 0.0), 0, 0});
  parallel_for(K, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i) {
      const auto cells = cells_in_ball(g, B[i].center, 0.75 * B[i].radius);
      std::vector<double> T(m + 1, 0.0);
      for (int j : r.cover.neighbors[i])
        for (int l = 0; l <= m; ++l) T[l] = std::max(T[l], avg[j][l]);
      for (int j : r.cover.neighbors[i]) {
        ++acc[i].pairs;
        for (int k = 0; k < m; ++k) {
          double diff = 0.0;
          for (const auto& s : indices_of_order(n, k)) {
            const auto dp = r.local[j].differentiate(s);
            const auto dq = Q[i].differentiate(s);
            for (std::size_t x : cells)
              for (int c = 0; c < N; ++c)
                diff = std::max(diff, std::abs(dp.evaluate(g.center(x), c) - dq.evaluate(g.center(x), c)));
          }
          for (int l = 0; l <= m; ++l) {
            const double den = std::pow(B[i].radius, l - k) * T[l];
            double ratio;
            if (den > 0.0) ratio = diff / den;
            else if (diff <= 1e-12) {
              ratio = 0.0;
              ++acc[i].exact;
            } else ratio = kInf;
            acc[i].per_order[l] = std::max(acc[i].per_order[l], ratio);
          }
        }
      }
    }
  });
  TransferReport rep;
  rep.per_order.assign(m + 1, 0.0);
  for (const auto& a : acc) {
    for (int l = 0; l <= m; ++l) rep.per_order[l] = std::max(rep.per_order[l], a.per_order[l]);
    rep.pairs += a.pairs;
    rep.exact += a.exact;
  }
  for (double v : rep.per_order) rep.max_ratio = std::max(rep.max_ratio, v);
  return rep;
}

CampanatoReport admissibility_report(const TruncationResult& r, const ExponentConfig& cfg) {
  const auto& g = r.v.geometry();
  const int m = r.m, n = g.n, N = r.v.components();
  const double R = r.config.R;
  std::vector<double> radii;
  for (int s = 1; s <= 6; ++s) {
    const double rad = R * std::ldexp(1.0, -s);
    if (rad >= 2.0 * g.spacing) radii.push_back(rad);
  }
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    bool on = true;
    for (int k = 0; k < n; ++k) on = on && c[k] % 4 == 0;
    if (on) centers.push_back(i);
  }
  std::vector<double> lhs(centers.size(), 0.0);
  std::vector<std::size_t> count(centers.size(), 0);
  parallel_for(centers.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t q = b0; q < b1; ++q) {
      const Point z = g.center(centers[q]);
      for (double rad : radii) {
        if (distance(z, r.config.center, n) >= 4.0 * R + rad) continue;
        const auto cells = cells_in_ball(g, z, rad);
        if (cells.empty()) continue;
        ++count[q];
        for (int l = 0; l < m; ++l) {
          const auto sig = indices_of_order(n, l);
          std::vector<double> mean(sig.size() * N, 0.0);
          for (std::size_t j : cells)
            for (std::size_t k = 0; k < sig.size(); ++k)
              for (int c = 0; c < N; ++c) mean[k * N + c] += r.dv_lambda.at(sig[k])(j, c);
          for (double& v : mean) v /= static_cast<double>(cells.size());
          double acc = 0.0;
          for (std::size_t j : cells) {
            double s2 = 0.0;
            for (std::size_t k = 0; k < sig.size(); ++k)
              for (int c = 0; c < N; ++c) {
                const double dlt = r.dv_lambda.at(sig[k])(j, c) - mean[k * N + c];
                s2 += dlt * dlt;
              }
            acc += std::sqrt(s2);
          }
          acc /= static_cast<double>(cells.size()) * rad;
          lhs[q] = std::max(lhs[q], acc / std::pow(R, m - l - 1));
        }
      }
    }
  });
  CampanatoReport rep;
  for (std::size_t q = 0; q < centers.size(); ++q) {
    rep.lhs = std::max(rep.lhs, lhs[q]);
    rep.balls += count[q];
  }
  rep.ratio = rep.lhs / std::pow(r.lambda, 1.0 / cfg.p);
  return rep;
}

TruncationSweep lambda_sweep(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                             const DerivedExponents& d, const TruncationConfig& t,
                             const std::vector<double>& multipliers, const TruncationData& data) {
  const auto& g = u.geometry();
  TruncationSweep sw;
  sw.delta = resolved_delta(t, d);
  const auto fields = assemble_fields(u, a, cfg, d, outer_cutoff(g, t), data);
  sw.lambda0 = lambda_floor(fields.G, sw.delta, t.center, t.R);
  sw.R0 = smallness_radius(u, cfg, d);

  const Region b3 = Region::ball(t.center, 3.0 * t.R);
  const auto Dm = order_norm(u, cfg.m);
  const auto rhs = map_field(a, Dm, [&](double av, double z) { return std::pow(double_phase(av, z, cfg.p, cfg.q), sw.delta); });
  const double den = average(rhs, b3)[0] + average(fields.F, b3, sw.delta)[0];
  sw.good_set_ratio = average(fields.G, b3, sw.delta)[0] / den;

  sw.checks.push_back(at_most("R_within_smallness_radius", t.R, sw.R0));
  sw.checks.push_back({"good_set_ratio_finite", std::isfinite(sw.good_set_ratio), sw.good_set_ratio, kInf, 0.0});

  for (double mult : multipliers) {
    if (!(mult > 1.0)) throw InputError("lambda multipliers must exceed 1");
    SweepRow row;
    row.multiplier = mult;
    row.lambda = mult * sw.lambda0;
    const auto res = truncate(u, cfg, t, fields.G, row.lambda);
    row.balls = res.cover.balls.size();
    for (const auto& c : res.checks) {
      auto copy = c;
      copy.name += "@" + std::to_string(mult).substr(0, 4);
      sw.checks.push_back(copy);
    }
    for (const auto& dr : derivative_bounds_report(res, a, cfg, d)) {
      row.c1 = std::max(row.c1, dr.c1);
      row.c2 = std::max(row.c2, dr.c2);
    }
    row.oscillation = oscillation_report(res, cfg);
    row.transfer = polynomial_transfer_report(res).max_ratio;
    row.campanato = admissibility_report(res, cfg);
    sw.rows.push_back(row);
  }

  auto drift = [&](const char* name, double prev, double next, double bound) {
    const double ratio = prev > 0.0 ? next / prev : (next > 0.0 ? kInf : 0.0);
    sw.checks.push_back(at_most(name, ratio, bound));
  };
  for (std::size_t k = 1; k < sw.rows.size(); ++k) {
    const auto& a0 = sw.rows[k - 1];
    const auto& a1 = sw.rows[k];
    drift("derivative_c1_drift", a0.c1, a1.c1, 1.25);
    drift("derivative_c2_drift", a0.c2, a1.c2, 1.25);
    drift("oscillation_drift", a0.oscillation, a1.oscillation, 1.25);
    drift("campanato_drift", a0.campanato.ratio, a1.campanato.ratio, 1.25);
    drift("campanato_lhs_growth", a0.campanato.lhs, a1.campanato.lhs,
          1.1 * std::pow(a1.lambda / a0.lambda, 1.0 / cfg.p));
    sw.checks.push_back({"transfer_finite", std::isfinite(a1.transfer), a1.transfer, kInf, 0.0});
  }
  return sw;
}

}  // namespace dptk
