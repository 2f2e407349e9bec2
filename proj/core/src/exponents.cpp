#include "dptk/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dptk/error.hpp"
#include "json_util.hpp"

namespace dptk {

double holder_conjugate(double t) {
  if (!(t >= 1.0)) throw InputError("Hoelder conjugate needs t >= 1");
  if (t == 1.0) return kInfinity;
  if (std::isinf(t)) return 1.0;
  return t / (t - 1.0);
}

double sobolev_exponent(double t, int order, int n) {
  if (std::isinf(t)) return kInfinity;
  if (order * t < n) return n * t / (n - order * t);
  return kInfinity;
}

ExponentConfig ExponentConfig::model(int n, int m, double p, double q, double alpha) {
  ExponentConfig c;
  c.n = n;
  c.m = m;
  c.p = p;
  c.q = q;
  c.alpha = alpha;
  for (int r = 0; r < 2; ++r) {
    c.s[r].assign(m + 1, kInfinity);
    c.t[r].assign(m + 1, kInfinity);
  }
  return c;
}

namespace {

std::string phase_name(int r) { return r == kP ? "p" : "q"; }

std::string tag(const std::string& base, int r, int ell) {
  return base + "[" + phase_name(r) + "," + std::to_string(ell) + "]";
}

double inv(double x) { return 1.0 / x; }  // 1/inf = 0

void check_shape(const ExponentConfig& c) {
  if (c.n < 1 || c.m < 1 || c.N < 1) throw InputError("n, m and N must be positive");
  for (int r = 0; r < 2; ++r)
    if (static_cast<int>(c.s[r].size()) != c.m + 1 || static_cast<int>(c.t[r].size()) != c.m + 1)
      throw InputError("s and t must have m+1 entries per phase");
}

// Reciprocal of the strict lower bound on s_{r,l}: 1 - 1/(r_{m-l})^* - 1/r'.
double s_room(const ExponentConfig& c, int r, int ell) {
  const double e = c.exponent(r);
  return 1.0 - inv(sobolev_exponent(e, c.m - ell, c.n)) - inv(holder_conjugate(e));
}

double t_room(const ExponentConfig& c, int r, int ell) {
  return 1.0 - inv(sobolev_exponent(c.exponent(r), c.m - ell, c.n));
}

}  // namespace

std::vector<Check> validate(const ExponentConfig& c) {
  std::vector<Check> out;
  try {
    check_shape(c);
  } catch (const InputError& e) {
    out.push_back({std::string("shape: ") + e.what(), false, 0, 0, 0});
    return out;
  }
  out.push_back(positive("p_above_one", c.p - 1.0));
  out.push_back({"p_at_most_q", c.p <= c.q, c.q - c.p, 0.0, 0.0});
  out.push_back(positive("alpha_positive", c.alpha));
  out.push_back({"seminorm_at_least_one", c.a_seminorm >= 1.0, c.a_seminorm - 1.0, 0.0, 0.0});
  out.push_back(positive("nu_positive", c.nu));
  out.push_back({"beta_src_at_least_one", c.beta_src >= 1.0, c.beta_src - 1.0, 0.0, 0.0});
  out.push_back(positive("gap_ratio", 1.0 + c.alpha / c.n - c.q / c.p));
  for (int r = 0; r < 2; ++r) {
    for (int ell = 0; ell <= c.m; ++ell) {
      if (ell < c.m) out.push_back(positive(tag("s_lower", r, ell), s_room(c, r, ell) - inv(c.s[r][ell])));
      out.push_back(positive(tag("t_lower", r, ell), t_room(c, r, ell) - inv(c.t[r][ell])));
    }
    out.push_back({"s_top_infinite[" + phase_name(r) + "]", std::isinf(c.s[r][c.m]), inv(c.s[r][c.m]), 0.0, 0.0});
  }
  for (int ell = 0; ell <= c.m; ++ell) {
    const double slack = c.alpha / c.q - c.n * (inv(sobolev_exponent(c.p, ell, c.n)) - inv(sobolev_exponent(c.q, ell, c.n)));
    out.push_back(positive("sobolev_gap[" + std::to_string(ell) + "]", slack));
  }
  return out;
}

namespace {

void require_valid(const ExponentConfig& c) {
  for (const auto& chk : validate(c))
    if (!chk.pass) throw InputError("exponent configuration violates " + chk.name);
}

bool coupling_ok(const ExponentConfig& c, double gp, double gq) {
  return c.alpha / c.q - c.n * (1.0 / gp - 1.0 / gq) > 0.0;
}

}  // namespace

DerivedExponents select_gammas(const ExponentConfig& c) {
  require_valid(c);
  DerivedExponents d;
  for (int r = 0; r < 2; ++r) {
    d.gamma[r].assign(c.m + 1, 0.0);
    d.s_hat[r].assign(c.m + 1, 0.0);
    d.t_hat[r].assign(c.m + 1, 0.0);
  }
  for (int ell = 0; ell < c.m; ++ell) {
    std::array<double, 2> lo{}, hi{}, g{};
    for (int r = 0; r < 2; ++r) {
      const double e = c.exponent(r);
      // 1/s < 1/r - 1/gamma and 1/t < 1 - 1/gamma, solved for gamma.
      const double from_s = 1.0 / (1.0 / e - inv(c.s[r][ell]));
      const double from_t = holder_conjugate(c.t[r][ell]);
      lo[r] = std::max({e, from_s, std::isinf(from_t) ? 1.0 : from_t});
      hi[r] = sobolev_exponent(e, c.m - ell, c.n);
      if (!(lo[r] < hi[r]))
        throw InputError("no admissible gamma for " + tag("gamma", r, ell) + ": lower bound " + std::to_string(lo[r]) +
                         " is not below the Sobolev exponent " + std::to_string(hi[r]));
      const double top = std::isinf(hi[r]) ? 4.0 * lo[r] : hi[r];
      g[r] = std::sqrt(lo[r] * top);
    }
    const auto order_pair = [&] {
      if (g[kP] <= g[kQ]) return true;
      if (g[kQ] > lo[kP]) {
        g[kP] = g[kQ];
        return true;
      }
      if (g[kP] < hi[kQ]) {
        g[kQ] = g[kP];
        return true;
      }
      return false;
    };
    if (!order_pair()) throw InputError("cannot order gamma_p <= gamma_q at order " + std::to_string(ell));
    int shrink = 0;
    while (!coupling_ok(c, g[kP], g[kQ])) {
      if (++shrink > 40)
        throw InputError("gamma coupling alpha/q - n(1/gamma_p - 1/gamma_q) > 0 infeasible at order " +
                         std::to_string(ell));
      for (int r = 0; r < 2; ++r) g[r] = lo[r] + 0.5 * (g[r] - lo[r]);
      if (!order_pair()) throw InputError("cannot order gamma_p <= gamma_q at order " + std::to_string(ell));
    }
    for (int r = 0; r < 2; ++r) {
      const double e = c.exponent(r);
      d.gamma[r][ell] = g[r];
      d.s_hat[r][ell] = 1.0 / (1.0 - 1.0 / g[r] - 1.0 / holder_conjugate(e));
      d.t_hat[r][ell] = 1.0 / (1.0 - 1.0 / g[r]);
    }
  }
  for (int r = 0; r < 2; ++r) {
    d.gamma[r][c.m] = c.exponent(r);
    d.s_hat[r][c.m] = kInfinity;
    d.t_hat[r][c.m] = holder_conjugate(c.exponent(r));
  }
  return d;
}

namespace {

// Name of the first violated delta0 constraint, or empty when feasible.
std::string delta0_violation(const ExponentConfig& c, const DerivedExponents& d, double dz) {
  if (!(dz > 1.0 / c.p && dz < 1.0)) return "delta0 in (1/p, 1)";
  if (!(1.0 / dz < c.beta_src)) return "1/delta0 < beta_src";
  for (int r = 0; r < 2; ++r) {
    for (int ell = 0; ell <= c.m; ++ell) {
      const double g = d.gamma[r][ell];
      if (!(d.t_hat[r][ell] / dz < c.t[r][ell])) return tag("t_hat/delta0 < t", r, ell);
      if (ell < c.m) {
        if (!(d.s_hat[r][ell] / dz < c.s[r][ell])) return tag("s_hat/delta0 < s", r, ell);
        if (!(g / dz < sobolev_exponent(c.exponent(r) * dz, c.m - ell, c.n)))
          return tag("gamma/delta0 below the Sobolev exponent of r*delta0", r, ell);
      }
      if (!(dz - 1.0 + 1.0 / g >= 1.0 - dz)) return tag("delta0 - 1 + 1/gamma >= 1 - delta0", r, ell);
    }
  }
  for (int ell = 0; ell <= c.m; ++ell) {
    const double slack = c.alpha / c.q - c.n * (1.0 / (d.gamma[kP][ell] * dz) - dz / d.gamma[kQ][ell]);
    if (!(slack > 0.0)) return "delta0 coupling at order " + std::to_string(ell);
  }
  return {};
}

}  // namespace

void select_delta0(const ExponentConfig& c, DerivedExponents& d) {
  constexpr double kResolution = 1e-6;
  const double top = 1.0 - kResolution;
  const std::string why = delta0_violation(c, d, top);
  if (!why.empty()) throw InputError("no admissible delta0 near 1: violates " + why);
  // Every constraint is monotone in delta0, so the feasible set is an
  // interval ending at 1; bisect for its lower edge.
  double bad = 1.0 / c.p;
  double good = top;
  while (good - bad > kResolution) {
    const double mid = 0.5 * (good + bad);
    if (delta0_violation(c, d, mid).empty())
      good = mid;
    else
      bad = mid;
  }
  d.delta0 = top;
  d.delta0_floor = good;
  d.beta.assign(c.m + 1, 0.0);
  for (int ell = 0; ell <= c.m; ++ell)
    d.beta[ell] = c.n * (1.0 / (d.gamma[kP][ell] * d.delta0) - d.delta0 / d.gamma[kQ][ell]);
}

DerivedExponents derive_exponents(const ExponentConfig& c) {
  DerivedExponents d = select_gammas(c);
  select_delta0(c, d);
  return d;
}

std::vector<Check> validate_derived(const ExponentConfig& c, const DerivedExponents& d) {
  std::vector<Check> out;
  const double dz = d.delta0;
  for (int r = 0; r < 2; ++r) {
    const double e = c.exponent(r);
    const double rc = holder_conjugate(e);
    for (int ell = 0; ell <= c.m; ++ell) {
      const double g = d.gamma[r][ell];
      if (ell < c.m) {
        out.push_back(positive(tag("gamma_above_r", r, ell), g - e));
        out.push_back(positive(tag("gamma_below_sobolev", r, ell), inv(g) - inv(sobolev_exponent(e, c.m - ell, c.n))));
        out.push_back(positive(tag("s_room", r, ell), 1.0 - 1.0 / g - 1.0 / rc - inv(c.s[r][ell])));
        out.push_back(positive(tag("s_hat_over_delta0", r, ell), inv(d.s_hat[r][ell] / dz) - inv(c.s[r][ell])));
        out.push_back(positive(tag("gamma_over_delta0", r, ell),
                               dz / g - inv(sobolev_exponent(e * dz, c.m - ell, c.n))));
      } else {
        out.push_back({tag("gamma_top_is_r", r, ell), g == e, g - e, 0.0, 0.0});
      }
      out.push_back(positive(tag("t_room", r, ell), 1.0 - 1.0 / g - inv(c.t[r][ell])));
      out.push_back(positive(tag("t_hat_over_delta0", r, ell), dz / d.t_hat[r][ell] - inv(c.t[r][ell])));
      const double s_identity = inv(d.s_hat[r][ell]) + 1.0 / g + 1.0 / rc - 1.0;
      const double t_identity = inv(d.t_hat[r][ell]) + 1.0 / g - 1.0;
      out.push_back(at_most(tag("s_hat_identity", r, ell), std::abs(s_identity), 1e-14));
      out.push_back(at_most(tag("t_hat_identity", r, ell), std::abs(t_identity), 1e-14));
      out.push_back({tag("delta0_halfway", r, ell), dz - 1.0 + 1.0 / g >= 1.0 - dz, (dz - 1.0 + 1.0 / g) - (1.0 - dz), 0.0, 0.0});
    }
  }
  out.push_back(positive("delta0_above_1/p", dz - 1.0 / c.p));
  out.push_back(positive("delta0_below_1", 1.0 - dz));
  out.push_back(positive("delta0_vs_beta_src", dz - inv(c.beta_src)));
  for (int ell = 0; ell <= c.m; ++ell) {
    const double gp = d.gamma[kP][ell];
    const double gq = d.gamma[kQ][ell];
    out.push_back({"gamma_ordered[" + std::to_string(ell) + "]", gp <= gq, gq - gp, 0.0, 0.0});
    out.push_back(positive("gamma_coupling[" + std::to_string(ell) + "]", c.alpha / c.q - c.n * (1.0 / gp - 1.0 / gq)));
    out.push_back(positive("delta0_coupling[" + std::to_string(ell) + "]", c.alpha / c.q - c.n * (1.0 / (gp * dz) - dz / gq)));
    const double b = d.beta[ell];
    out.push_back(positive("beta_positive[" + std::to_string(ell) + "]", b));
    out.push_back(positive("beta_window[" + std::to_string(ell) + "]", std::min(c.n / (gp * dz), c.alpha / c.q) - b));
    const double lhs = c.n * gp * dz / (c.n - b * gp * dz);
    out.push_back(at_most("beta_sobolev_identity[" + std::to_string(ell) + "]", std::abs(lhs - gq / dz) / (gq / dz), 1e-12));
  }
  return out;
}

RieszGap riesz_gap(double p, double q, int n, double alpha) {
  if (!(p >= 1.0 && p <= q)) throw InputError("riesz_gap needs 1 <= p <= q");
  if (!(q < n)) throw InputError("riesz_gap needs q < n");
  RieszGap g;
  // n - beta p cancels badly as q -> n; the identities are checked in extended precision.
  using ld = long double;
  const ld P = p, Q = q, Nn = n, A = alpha;
  const ld b = Nn * (1.0L / P - 1.0L / Q) + 1.0L;
  g.beta = static_cast<double>(b);
  g.in_range = g.beta >= 1.0 && g.beta < n / p;
  const ld lhs = Nn * P / (Nn - b * P);
  const ld rhs = Nn * Q / (Nn - Q);
  g.sobolev_residual = static_cast<double>(std::abs(lhs - rhs) / rhs);
  g.scaling_residual = static_cast<double>(std::abs((1.0L + A / Q - b) - (Nn / Q) * (1.0L + A / Nn - Q / P)));
  return g;
}

namespace {

using detail::Json;

std::vector<double> exponent_row(const Json& j, int m) {
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(detail::number_or_inf(x));
    if (static_cast<int>(v.size()) != m + 1) throw InputError("s/t rows need m+1 entries");
    return v;
  }
  return std::vector<double>(m + 1, detail::number_or_inf(j));
}

}  // namespace

ExponentConfig parse_exponent_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed exponent config: ") + e.what());
  }
  try {
    ExponentConfig c = ExponentConfig::model(j.value("n", 2), j.value("m", 1), detail::number_or_inf(j.value("p", Json(2.0))),
                                             detail::number_or_inf(j.value("q", Json(2.2))),
                                             detail::number_or_inf(j.value("alpha", Json(0.5))));
    c.N = j.value("N", 1);
    c.a_seminorm = detail::number_or_inf(j.value("a_seminorm", Json(1.0)));
    c.nu = detail::number_or_inf(j.value("nu", Json(1.0)));
    c.beta_src = detail::number_or_inf(j.value("beta_src", Json("inf")));
    for (const char* key : {"s", "t"}) {
      if (!j.contains(key)) continue;
      const Json& rows = j.at(key);
      auto& dst = key[0] == 's' ? c.s : c.t;
      if (rows.is_array() && rows.size() == 2) {
        for (int r = 0; r < 2; ++r) dst[r] = exponent_row(rows[r], c.m);
      } else {
        for (int r = 0; r < 2; ++r) dst[r] = exponent_row(rows, c.m);
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed exponent config: ") + e.what());
  }
}

ExponentConfig load_exponent_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_exponent_config(ss.str());
}

namespace {

Json rows_json(const std::array<std::vector<double>, 2>& v) {
  Json out = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (double x : v[r]) row.push_back(detail::finite_or_string(x));
    out.push_back(row);
  }
  return out;
}

Json config_object(const ExponentConfig& c) {
  Json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["N"] = c.N;
  j["p"] = c.p;
  j["q"] = c.q;
  j["alpha"] = c.alpha;
  j["a_seminorm"] = c.a_seminorm;
  j["nu"] = c.nu;
  j["beta_src"] = detail::finite_or_string(c.beta_src);
  j["s"] = rows_json(c.s);
  j["t"] = rows_json(c.t);
  return j;
}

}  // namespace

std::string exponent_config_json(const ExponentConfig& c) { return detail::dump17(config_object(c)); }

std::string derived_exponents_json(const ExponentConfig& c, const DerivedExponents& d) {
  Json j;
  j["config"] = config_object(c);
  j["gamma"] = rows_json(d.gamma);
  j["s_hat"] = rows_json(d.s_hat);
  j["t_hat"] = rows_json(d.t_hat);
  j["delta0"] = d.delta0;
  j["delta0_floor"] = d.delta0_floor;
  Json beta = Json::array();
  for (double b : d.beta) beta.push_back(b);
  j["beta"] = beta;
  Json checks = Json::array();
  for (const auto& chk : validate_derived(c, d))
    checks.push_back({{"name", chk.name}, {"status", chk.pass ? "pass" : "fail"}, {"measured", detail::finite_or_string(chk.measured)}});
  j["checks"] = checks;
  return detail::dump17(j);
}

}  // namespace dptk
