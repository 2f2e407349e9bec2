#include "dptk/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dptk/error.hpp"
#include "dptk/parallel.hpp"

namespace dptk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Layout {
  int n;
  int rows;  // product of all extents except the last active axis
  int len;   // extent of the last active axis
  std::array<int, kMaxDim> dims;
};

Layout layout_of(const GridGeometry& g) {
  Layout l{g.n, 1, g.dims[g.n - 1], g.dims};
  for (int k = 0; k < g.n - 1; ++k) l.rows *= g.dims[k];
  return l;
}

// Offsets along the leading n-1 axes with |d|^2 <= limit.
std::vector<std::array<int, 2>> leading_offsets(int n, int r) {
  std::vector<std::array<int, 2>> out;
  const int a = n >= 2 ? r : 0;
  const int b = n >= 3 ? r : 0;
  for (int i = -a; i <= a; ++i)
    for (int j = -b; j <= b; ++j)
      if (i * i + j * j <= r * r) out.push_back({i, j});
  return out;
}

// Row index of the leading coordinates shifted by d, or -1 if off-grid.
int shifted_row(const Layout& l, int row, const std::array<int, 2>& d) {
  if (l.n == 1) return row;
  if (l.n == 2) {
    const int i = row + d[0];
    return i >= 0 && i < l.dims[0] ? i : -1;
  }
  const int i = row / l.dims[1] + d[0];
  const int j = row % l.dims[1] + d[1];
  if (i < 0 || i >= l.dims[0] || j < 0 || j >= l.dims[1]) return -1;
  return i * l.dims[1] + j;
}

// Sum of |f| over lattice points strictly inside radius r around every point.
std::vector<double> ball_sums(const Layout& l, const std::vector<double>& prefix, int r, long long& count) {
  std::vector<double> out(static_cast<std::size_t>(l.rows) * l.len, 0.0);
  std::vector<std::pair<std::array<int, 2>, int>> spans;
  count = 0;
  for (const auto& d : leading_offsets(l.n, r)) {
    const int d2 = d[0] * d[0] + d[1] * d[1];
    if (d2 >= r * r) continue;
    const int w = static_cast<int>(std::ceil(std::sqrt(double(r * r - d2)))) - 1;
    spans.push_back({d, w});
    count += 2 * w + 1;
  }
  const std::size_t stride = static_cast<std::size_t>(l.len) + 1;
  parallel_for(l.rows, [&](std::size_t b, std::size_t e) {
    for (std::size_t row = b; row < e; ++row) {
      double* dst = out.data() + row * l.len;
      for (const auto& [d, w] : spans) {
        const int src = shifted_row(l, static_cast<int>(row), d);
        if (src < 0) continue;
        const double* pre = prefix.data() + src * stride;
        for (int x = 0; x < l.len; ++x) {
          const int lo = std::max(0, x - w);
          const int hi = std::min(l.len, x + w + 1);
          dst[x] += pre[hi] - pre[lo];
        }
      }
    }
  });
  return out;
}

// max over |t| <= w of v[x + t] along each row (van Herk / Gil-Werman).
std::vector<double> sliding_max(const Layout& l, const std::vector<double>& v, int w) {
  std::vector<double> out(v.size());
  if (w == 0) return v;
  const int k = 2 * w + 1;
  parallel_for(l.rows, [&](std::size_t b, std::size_t e) {
    const int padded = l.len + 2 * w;
    const int blocks = (padded + k - 1) / k;
    std::vector<double> p(static_cast<std::size_t>(blocks) * k, kNegInf), g(p.size()), h(p.size());
    for (std::size_t row = b; row < e; ++row) {
      std::fill(p.begin(), p.end(), kNegInf);
      std::copy_n(v.data() + row * l.len, l.len, p.begin() + w);
      for (int s = 0; s < blocks * k; s += k) {
        g[s] = p[s];
        for (int t = 1; t < k; ++t) g[s + t] = std::max(g[s + t - 1], p[s + t]);
        h[s + k - 1] = p[s + k - 1];
        for (int t = k - 2; t >= 0; --t) h[s + t] = std::max(h[s + t + 1], p[s + t]);
      }
      double* dst = out.data() + row * l.len;
      for (int x = 0; x < l.len; ++x) dst[x] = std::max(h[x], g[x + 2 * w]);
    }
  });
  return out;
}

std::vector<double> row_prefix(const Layout& l, const std::vector<double>& f) {
  const std::size_t stride = static_cast<std::size_t>(l.len) + 1;
  std::vector<double> pre(static_cast<std::size_t>(l.rows) * stride, 0.0);
  for (int row = 0; row < l.rows; ++row)
    for (int x = 0; x < l.len; ++x) pre[row * stride + x + 1] = pre[row * stride + x] + f[row * l.len + x];
  return pre;
}

std::vector<double> apply_once(const GridGeometry& g, std::vector<double> f, double beta, MaximalMode mode) {
  const Layout l = layout_of(g);
  for (double& x : f) x = std::abs(x);
  const auto prefix = row_prefix(l, f);
  std::vector<double> result(f.size(), 0.0);
  for (int r : radius_family(g)) {
    long long count = 0;
    auto avg = ball_sums(l, prefix, r, count);
    const double scale = std::pow(r * g.spacing, beta) / static_cast<double>(count);
    for (double& x : avg) x *= scale;
    if (mode == MaximalMode::centered) {
      for (std::size_t i = 0; i < avg.size(); ++i) result[i] = std::max(result[i], avg[i]);
      continue;
    }
    std::map<int, std::vector<double>> by_width;
    const auto offsets = leading_offsets(l.n, r);
    for (const auto& d : offsets) {
      const int w = static_cast<int>(std::floor(std::sqrt(double(r * r - d[0] * d[0] - d[1] * d[1]))));
      if (!by_width.contains(w)) by_width.emplace(w, sliding_max(l, avg, w));
    }
    parallel_for(l.rows, [&](std::size_t b, std::size_t e) {
      for (std::size_t row = b; row < e; ++row) {
        double* dst = result.data() + row * l.len;
        for (const auto& d : offsets) {
          const int src = shifted_row(l, static_cast<int>(row), d);
          if (src < 0) continue;
          const int w = static_cast<int>(std::floor(std::sqrt(double(r * r - d[0] * d[0] - d[1] * d[1]))));
          const double* s = by_width.at(w).data() + static_cast<std::size_t>(src) * l.len;
          for (int x = 0; x < l.len; ++x) dst[x] = std::max(dst[x], s[x]);
        }
      }
    });
  }
  return result;
}

std::vector<double> masked_values(const GridFunction& f, const std::optional<Region>& region) {
  std::vector<double> v(f.values().begin(), f.values().end());
  if (region) {
    const auto cells = region->cells(f.geometry());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!cells[i]) v[i] = 0.0;
  }
  return v;
}

}  // namespace

std::vector<int> radius_family(const GridGeometry& g) {
  double diam2 = 0.0;
  for (int k = 0; k < g.n; ++k) diam2 += double(g.dims[k]) * g.dims[k];
  const double diam = std::sqrt(diam2);
  std::vector<int> radii;
  auto push = [&](int r) {
    if (!radii.empty() && radii.back() >= diam) return;
    radii.push_back(r);
  };
  for (int r = 1; r <= 8; ++r) push(r);
  for (int k = 1; radii.back() < diam; ++k)
    for (int j = 4; j <= 7; ++j) push(j << k);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

GridFunction maximal_function(const GridFunction& f, const MaximalSpec& spec) {
  const auto& g = f.geometry();
  if (f.components() != 1) throw InputError("maximal function needs a scalar field");
  if (!(spec.beta >= 0.0 && spec.beta < g.n)) throw InputError("maximal order beta must lie in [0, n)");
  if (spec.iterations < 1) throw InputError("iterations must be >= 1");
  GridFunction cur = f;
  for (int it = 0; it < spec.iterations; ++it) {
    auto v = apply_once(g, masked_values(cur, spec.restriction), spec.beta, spec.mode);
    cur = GridFunction(g, 1, std::move(v));
  }
  return cur;
}

GridFunction iterated_maximal(const GridFunction& f, const Region& ball, int iterations) {
  return maximal_function(f, MaximalSpec{0.0, MaximalMode::uncentered, ball, iterations});
}

GridFunction iterated_maximal(const GridFunction& f, int iterations) {
  if (iterations == 0) return abs(f);
  return maximal_function(f, MaximalSpec{0.0, MaximalMode::uncentered, std::nullopt, iterations});
}

double composition_constant(int n, double beta) {
  if (!(beta > 0.0 && beta < n)) throw InputError("composition constant needs beta in (0, n)");
  const double centered = std::pow(2.0, n - beta) + std::pow(4.0, n) / (std::pow(2.0, beta) - 1.0);
  return std::pow(2.0, 2.0 * n - beta) * centered;
}

CompositionReport composition_report(const GridFunction& f, double beta) {
  CompositionReport rep;
  rep.bound = composition_constant(f.dim(), beta);
  const auto mb = maximal_function(f, MaximalSpec{beta, MaximalMode::uncentered, std::nullopt, 1});
  const auto mmb = maximal_function(mb, MaximalSpec{});
  std::vector<std::size_t> all(f.points());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  rep.ratio = sup_ratio(mmb.values(), mb.values(), all);
  rep.pass = rep.ratio.acceptable() && rep.ratio.sup <= rep.bound;
  return rep;
}

std::vector<ModulusRow> continuity_modulus_report(const GridFunction& f, double beta, const Region& region) {
  const auto& g = f.geometry();
  const auto mf = maximal_function(f, MaximalSpec{beta, MaximalMode::uncentered, std::nullopt, 1});
  const auto inside = region.cells(g);
  std::vector<ModulusRow> rows;
  for (int shift : {1, 2, 4, 8}) {
    std::vector<std::array<int, kMaxDim>> shifts;
    const int a = shift, b = g.n >= 2 ? shift : 0, c = g.n >= 3 ? shift : 0;
    for (int i = -a; i <= a; ++i)
      for (int j = -b; j <= b; ++j)
        for (int k = -c; k <= c; ++k) {
          const int d2 = i * i + j * j + k * k;
          if (d2 > 0 && d2 <= shift * shift) shifts.push_back({i, j, k});
        }
    std::vector<double> local(g.size(), 0.0);
    parallel_for(g.size(), [&](std::size_t bgn, std::size_t end) {
      for (std::size_t x = bgn; x < end; ++x) {
        if (!inside[x]) continue;
        const auto cx = g.coords(x);
        for (const auto& s : shifts) {
          std::array<int, kMaxDim> cy{cx[0] + s[0], cx[1] + s[1], cx[2] + s[2]};
          bool ok = true;
          for (int k = 0; k < kMaxDim; ++k) ok = ok && cy[k] >= 0 && cy[k] < (k < g.n ? g.dims[k] : 1);
          if (!ok) continue;
          const std::size_t y = g.index(cy);
          if (inside[y]) local[x] = std::max(local[x], std::abs(mf(y) - mf(x)));
        }
      }
    });
    rows.push_back({shift, *std::max_element(local.begin(), local.end())});
  }
  return rows;
}

HedbergReport hedberg_report(const GridFunction& u, int order, const Region& ball, const GridFunction& eta) {
  if (ball.kind() != Region::Kind::ball) throw InputError("Hedberg report needs a ball region");
  if (order < 1) throw InputError("Hedberg order must be >= 1");
  const auto& g = u.geometry();
  HedbergReport rep;
  double scale = 0.0;
  for (std::size_t i = 0; i < u.points(); ++i) scale = std::max(scale, std::abs(u(i)));
  for (int k = 0; k < order; ++k)
    for (const auto& sigma : indices_of_order(g.n, k)) {
      const auto avg = weighted_average(k == 0 ? u : partial_derivative(u, sigma), ball, eta);
      for (double v : avg) rep.residual = std::max(rep.residual, std::abs(v));
    }
  if (rep.residual > 1e-8 * (1.0 + scale))
    throw InputError("Hedberg precondition: weighted averages of lower derivatives are " + std::to_string(rep.residual) +
                     ", not zero");
  const auto top = derivative_norm(u, order);
  const auto mx = iterated_maximal(top, ball, 2 * order);
  const double rl = std::pow(ball.radius(), order);
  std::vector<double> num(u.points()), den(u.points());
  for (std::size_t i = 0; i < u.points(); ++i) {
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) s += u(i, c) * u(i, c);
    num[i] = std::sqrt(s);
    den[i] = rl * mx(i);
  }
  const auto idx = ball.indices(g);
  rep.ratio = sup_ratio(num, den, idx);
  rep.pass = rep.ratio.acceptable();
  return rep;
}

WeightedHedbergReport weighted_hedberg_report(const GridFunction& f, const GridFunction& a, double q, double beta,
                                              int iterations, const Region& ball) {
  if (ball.kind() != Region::Kind::ball) throw InputError("weighted Hedberg report needs a ball region");
  if (ball.radius() > 1.0) throw InputError("weighted Hedberg report assumes R <= 1");
  if (iterations < 1) throw InputError("iterations must be >= 1");
  const auto& g = f.geometry();
  GridFunction a1q = pow(a, 1.0 / q);
  const auto lhs_m = iterated_maximal(f, ball, iterations);
  const auto rhs1 = iterated_maximal(a1q * abs(f), ball, iterations);
  const auto inner = iterated_maximal(masked(f, ball.cells(g)), iterations - 1);
  const auto rhs2 = maximal_function(inner, MaximalSpec{beta, MaximalMode::uncentered, std::nullopt, 1});
  std::vector<double> num(f.points()), den(f.points());
  for (std::size_t i = 0; i < f.points(); ++i) {
    num[i] = a1q(i) * lhs_m(i);
    den[i] = rhs1(i) + rhs2(i);
  }
  WeightedHedbergReport rep;
  rep.ratio = sup_ratio(num, den, ball.indices(g));
  rep.pass = rep.ratio.acceptable();
  return rep;
}

}  // namespace dptk
