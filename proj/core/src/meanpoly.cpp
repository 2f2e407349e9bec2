#include "dptk/meanpoly.hpp"

#include <algorithm>
#include <cmath>

#include "dptk/error.hpp"
#include "dptk/maximal.hpp"
#include "dptk/reduce.hpp"
#include "json_util.hpp"

namespace dptk {

MVPolynomial::MVPolynomial(int n, int degree, const Point& center, int components)
    : n_(n), degree_(degree), components_(components), center_(center) {
  if (degree < 0) throw InputError("polynomial degree must be >= 0");
  indices_ = indices_up_to(n, degree);
  coeffs_.assign(indices_.size() * components, 0.0);
}

std::size_t MVPolynomial::slot(const MultiIndex& sigma) const {
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), sigma, [](const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a < b;
  });
  if (it == indices_.end() || !(*it == sigma)) throw InputError("multi-index " + sigma.to_string() + " out of range");
  return static_cast<std::size_t>(it - indices_.begin());
}

double MVPolynomial::coefficient(const MultiIndex& sigma, int comp) const {
  if (sigma.order() > degree_) return 0.0;
  return coeffs_[slot(sigma) * components_ + comp];
}

void MVPolynomial::set_coefficient(const MultiIndex& sigma, double value, int comp) {
  coeffs_[slot(sigma) * components_ + comp] = value;
}

double MVPolynomial::evaluate(const Point& x, int comp) const {
  Point d{};
  for (int k = 0; k < n_; ++k) d[k] = x[k] - center_[k];
  double s = 0.0;
  for (std::size_t i = 0; i < indices_.size(); ++i) s += coeffs_[i * components_ + comp] * indices_[i].power(d);
  return s;
}

MVPolynomial MVPolynomial::differentiate(const MultiIndex& sigma) const {
  MVPolynomial out(n_, degree_, center_, components_);
  if (sigma.order() > degree_) return out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto& tau = indices_[i];
    if (!dominates(tau, sigma)) continue;
    const double f = falling_factorial(tau, sigma);
    const auto target = out.slot(difference(tau, sigma));
    for (int c = 0; c < components_; ++c) out.coeffs_[target * components_ + c] += f * coeffs_[i * components_ + c];
  }
  return out;
}

MVPolynomial MVPolynomial::recenter(const Point& center) const {
  // b_sigma = (d_sigma P)(new center) / sigma!
  MVPolynomial out(n_, degree_, center, components_);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto d = differentiate(indices_[i]);
    const double fact = static_cast<double>(indices_[i].factorial());
    for (int c = 0; c < components_; ++c) out.coeffs_[i * components_ + c] = d.evaluate(center, c) / fact;
  }
  return out;
}

GridFunction MVPolynomial::sample(const GridGeometry& g) const {
  GridFunction out(g, components_);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.center(i);
    for (int c = 0; c < components_; ++c) out(i, c) = evaluate(x, c);
  }
  return out;
}

MVPolynomial& MVPolynomial::operator+=(const MVPolynomial& o) {
  if (o.n_ != n_ || o.degree_ != degree_ || o.components_ != components_ || o.center_ != center_)
    throw InputError("polynomials must share dimension, degree and center");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

MVPolynomial& MVPolynomial::operator-=(const MVPolynomial& o) {
  if (o.n_ != n_ || o.degree_ != degree_ || o.components_ != components_ || o.center_ != center_)
    throw InputError("polynomials must share dimension, degree and center");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

WeightedCells WeightedCells::from(const GridGeometry& g, const Region& region, const GridFunction& eta) {
  if (!(eta.geometry() == g) || eta.components() != 1) throw InputError("weight must be a scalar field on the grid");
  WeightedCells wc;
  for (std::size_t i : region.indices(g)) {
    if (eta(i) < 0.0) throw InputError("weight must be nonnegative");
    wc.index.push_back(i);
    wc.weight.push_back(eta(i));
  }
  return wc;
}

double WeightedCells::average(std::span<const double> values, int components, int comp) const {
  std::vector<double> num(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) num[k] = values[index[k] * components + comp] * weight[k];
  const double den = pairwise_sum(weight);
  if (!(den > 0.0)) throw InputError("degenerate weight");
  return pairwise_sum(num) / den;
}

DerivativeCache::DerivativeCache(const GridFunction& u, int order) : u_(u), order_(order) {
  for (const auto& sigma : indices_up_to(u.dim(), order))
    if (sigma.order() > 0) d_.emplace(sigma, partial_derivative(u, sigma));
}

const GridFunction& DerivativeCache::get(const MultiIndex& sigma) const {
  if (sigma.order() == 0) return u_;
  const auto it = d_.find(sigma);
  if (it == d_.end()) throw InputError("derivative " + sigma.to_string() + " not cached");
  return it->second;
}

MVPolynomial fit(const DerivativeCache& du, const WeightedCells& cells, int m, const Point& center) {
  if (m < 1) throw InputError("polynomial order m must be >= 1");
  const auto& g = du.base().geometry();
  const int n = g.n;
  const int comps = du.base().components();
  MVPolynomial p(n, m - 1, center, comps);
  const auto idx = indices_up_to(n, m - 1);
  // Weighted averages of the monomials (x - x0)^mu.
  std::vector<double> mono(idx.size());
  {
    std::vector<double> vals(g.size() * idx.size(), 0.0);
    for (std::size_t i : cells.index) {
      Point d{};
      const Point x = g.center(i);
      for (int k = 0; k < n; ++k) d[k] = x[k] - center[k];
      for (std::size_t j = 0; j < idx.size(); ++j) vals[i * idx.size() + j] = idx[j].power(d);
    }
    for (std::size_t j = 0; j < idx.size(); ++j) mono[j] = cells.average(vals, static_cast<int>(idx.size()), static_cast<int>(j));
  }
  auto mono_of = [&](const MultiIndex& mu) {
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (idx[j] == mu) return mono[j];
    return 0.0;
  };
  for (int order = m - 1; order >= 0; --order) {
    for (const auto& sigma : indices_of_order(n, order)) {
      const auto& ds = du.get(sigma);
      for (int c = 0; c < comps; ++c) {
        double acc = cells.average(ds.values(), comps, c);
        for (const auto& tau : idx) {
          if (tau.order() <= order || !dominates(tau, sigma)) continue;
          acc -= falling_factorial(tau, sigma) * p.coefficient(tau, c) * mono_of(difference(tau, sigma));
        }
        p.set_coefficient(sigma, acc / static_cast<double>(sigma.factorial()), c);
      }
    }
  }
  return p;
}

MVPolynomial fit(const GridFunction& u, const Region& region, const GridFunction& eta, int m, const Point& center) {
  const DerivativeCache du(u, m - 1);
  return fit(du, WeightedCells::from(u.geometry(), region, eta), m, center);
}

double moment_residual(const GridFunction& u, const MVPolynomial& p, const Region& region, const GridFunction& eta) {
  const auto& g = u.geometry();
  const auto cells = WeightedCells::from(g, region, eta);
  const DerivativeCache du(u, p.degree());
  double worst = 0.0;
  for (const auto& sigma : p.indices()) {
    const auto dp = p.differentiate(sigma).sample(g);
    const auto& ds = du.get(sigma);
    for (int c = 0; c < u.components(); ++c) {
      const double a = cells.average(ds.values(), u.components(), c);
      const double b = cells.average(dp.values(), u.components(), c);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

double derivative_norm(const MVPolynomial& p, int order, const Point& x) {
  double s = 0.0;
  for (const auto& sigma : indices_of_order(p.dim(), order)) {
    const auto d = p.differentiate(sigma);
    for (int c = 0; c < p.components(); ++c) {
      const double v = d.evaluate(x, c);
      s += v * v;
    }
  }
  return std::sqrt(s);
}

namespace {

// |(D^mu u)_{B,eta}| for mu = 0..top.
std::vector<double> averaged_derivative_norms(const DerivativeCache& du, const WeightedCells& cells, int top) {
  std::vector<double> out(top + 1, 0.0);
  const int comps = du.base().components();
  for (int mu = 0; mu <= top; ++mu) {
    double s = 0.0;
    for (const auto& sigma : indices_of_order(du.base().dim(), mu))
      for (int c = 0; c < comps; ++c) {
        const double v = cells.average(du.get(sigma).values(), comps, c);
        s += v * v;
      }
    out[mu] = std::sqrt(s);
  }
  return out;
}

}  // namespace

std::vector<OrderRatio> coefficient_bounds_report(const MVPolynomial& p, const GridFunction& u, const Region& ball,
                                                  const GridFunction& eta, const Region& aux_ball) {
  if (ball.kind() != Region::Kind::ball) throw InputError("coefficient bounds need a ball region");
  const auto& g = u.geometry();
  const int m = p.degree() + 1;
  const DerivativeCache du(u, m - 1);
  const auto cells = WeightedCells::from(g, ball, eta);
  const auto avg = averaged_derivative_norms(du, cells, m - 1);
  auto inside = ball.cells(g);
  const auto aux = aux_ball.cells(g);
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (inside[i] || aux[i]) where.push_back(i);
  std::vector<OrderRatio> out;
  const double R = ball.radius();
  for (int l = 0; l < m; ++l) {
    double den = 0.0;
    for (int mu = l; mu < m; ++mu) den += std::pow(R, mu - l) * avg[mu];
    std::vector<double> num(g.size(), 0.0), dd(g.size(), den);
    for (std::size_t i : where) num[i] = derivative_norm(p, l, g.center(i));
    out.push_back({l, sup_ratio(num, dd, where)});
  }
  return out;
}

IntegrationByPartsReport integration_by_parts_report(const MVPolynomial& p, const GridFunction& u,
                                                     const Region& ball, const GridFunction& eta, double cutoff_bound) {
  if (ball.kind() != Region::Kind::ball) throw InputError("integration by parts report needs a ball region");
  const auto& g = u.geometry();
  const int m = p.degree() + 1;
  const double R = ball.radius();
  IntegrationByPartsReport rep;
  const auto inside = ball.cells(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!inside[i] && eta(i) != 0.0) throw InputError("cutoff is not supported in the ball");
  int worst = -1;
  double worst_value = 0.0;
  for (int l = 0; l <= m; ++l) {
    const auto d = l == 0 ? abs(eta) : derivative_norm(eta, l);
    const double c = max_value(d) * std::pow(R, l);
    rep.cutoff_constants.push_back(c);
    if (c > cutoff_bound && c > worst_value) {
      worst = l;
      worst_value = c;
    }
  }
  if (worst >= 0)
    throw InputError("cutoff derivative bound fails at order " + std::to_string(worst) + " (" +
                     std::to_string(worst_value) + ")");
  const auto idx = ball.indices(g);
  for (int l = 0; l < m; ++l) {
    const double mean = average(l == 0 ? abs(u) : derivative_norm(u, l), ball)[0];
    std::vector<double> num(g.size(), 0.0), den(g.size(), mean);
    for (std::size_t i : idx) num[i] = derivative_norm(p, l, g.center(i));
    rep.ratios.push_back({l, sup_ratio(num, den, idx)});
  }
  return rep;
}

RatioStats kernel_bound_report(const GridFunction& u, const Region& ball, const GridFunction& eta, int m, int order) {
  if (ball.kind() != Region::Kind::ball) throw InputError("kernel bound needs a ball region");
  if (order > m || order < 0) throw InputError("kernel bound needs 0 <= l <= m");
  const auto& g = u.geometry();
  const auto p = fit(u, ball, eta, m, ball.center());
  const auto diff = u - p.sample(g);
  const double R = ball.radius();
  std::vector<double> num(g.size(), 0.0);
  for (int k = 0; k <= order; ++k) {
    const auto dk = k == 0 ? abs(diff) : derivative_norm(diff, k);
    const double s = std::pow(R, order - k);
    for (std::size_t i = 0; i < g.size(); ++i) num[i] += dk(i) / s;
  }
  const auto top = order == 0 ? abs(u) : derivative_norm(u, order);
  const auto mx = iterated_maximal(top, ball, 2 * order + 1);
  return sup_ratio(num, mx.values(), ball.indices(g));
}

std::string polynomial_json(const MVPolynomial& p) {
  detail::Json j;
  detail::Json center = detail::Json::array();
  for (int k = 0; k < p.dim(); ++k) center.push_back(p.center()[k]);
  j["center"] = center;
  j["degree"] = p.degree();
  detail::Json coeffs = detail::Json::object();
  for (const auto& sigma : p.indices()) {
    detail::Json row = detail::Json::array();
    for (int c = 0; c < p.components(); ++c) row.push_back(p.coefficient(sigma, c));
    coeffs[sigma.to_string()] = p.components() == 1 ? row[0] : row;
  }
  j["coefficients"] = coeffs;
  return detail::dump17(j);
}

}  // namespace dptk
