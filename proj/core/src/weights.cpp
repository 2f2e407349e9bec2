#include "dptk/weights.hpp"

#include <algorithm>
#include <cmath>

#include "dptk/error.hpp"
#include "dptk/parallel.hpp"

namespace dptk {

namespace {

void require_nonnegative(const GridFunction& a) {
  if (a.components() != 1) throw InputError("weight must be scalar");
  for (std::size_t i = 0; i < a.points(); ++i)
    if (!(a(i) >= 0.0)) throw InputError("weight has a negative or nonfinite sample");
}

// |offset * h|^alpha for lattice offsets, indexed by absolute offsets.
class OffsetPowers {
 public:
  OffsetPowers(const GridGeometry& g, double step, double alpha) {
    for (int k = 0; k < kMaxDim; ++k) ext_[k] = k < g.n ? g.dims[k] : 1;
    table_.resize(static_cast<std::size_t>(ext_[0]) * ext_[1] * ext_[2]);
    for (int i = 0; i < ext_[0]; ++i)
      for (int j = 0; j < ext_[1]; ++j)
        for (int k = 0; k < ext_[2]; ++k)
          table_[(static_cast<std::size_t>(i) * ext_[1] + j) * ext_[2] + k] =
              std::pow(step * std::sqrt(double(i * i + j * j + k * k)), alpha);
  }
  double operator()(int di, int dj, int dk) const {
    return table_[(static_cast<std::size_t>(std::abs(di)) * ext_[1] + std::abs(dj)) * ext_[2] + std::abs(dk)];
  }

 private:
  std::array<int, kMaxDim> ext_{};
  std::vector<double> table_;
};

}  // namespace

double seminorm_sup(const GridFunction& a, double alpha, const Region& region, int stride) {
  require_nonnegative(a);
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  const auto& g = a.geometry();
  struct Site {
    std::array<int, kMaxDim> c;
    double v;
  };
  std::vector<Site> sites;
  for (std::size_t idx : region.indices(g)) {
    auto c = g.coords(idx);
    bool keep = true;
    for (int k = 0; k < g.n; ++k) keep = keep && c[k] % stride == 0;
    if (keep) sites.push_back({c, a(idx)});
  }
  if (sites.empty()) return 1.0;
  const OffsetPowers pw(g, g.spacing, alpha);
  std::vector<double> best(sites.size(), 0.0);
  parallel_for(sites.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double ax = sites[i].v;
      if (ax == 0.0) continue;
      double m = 0.0;
      for (const auto& y : sites) {
        const double d = y.v + pw(sites[i].c[0] - y.c[0], sites[i].c[1] - y.c[1], sites[i].c[2] - y.c[2]);
        m = std::max(m, ax / d);
      }
      best[i] = m;
    }
  });
  return std::max(1.0, *std::max_element(best.begin(), best.end()));
}

SeminormEstimate estimate_seminorm(const GridFunction& a, double alpha, const Region& region) {
  SeminormEstimate est;
  const auto& g = a.geometry();
  int min_dim = g.dims[0];
  for (int k = 1; k < g.n; ++k) min_dim = std::min(min_dim, g.dims[k]);
  for (int stride = 1; stride <= 8 && min_dim / stride >= 2; stride *= 2)
    est.levels.push_back(seminorm_sup(a, alpha, region, stride));
  est.value = est.levels.front();
  est.diverging = est.levels.size() > 1 && est.levels.front() > 2.0 * est.levels.back();
  return est;
}

GridFunction regularize(const GridFunction& a, double alpha, bool check) {
  require_nonnegative(a);
  const auto& g = a.geometry();
  if (check && estimate_seminorm(a, alpha, Region::whole(g)).diverging)
    throw InputError("weight seminorm diverges under refinement; cannot regularize");
  const OffsetPowers pw(g, g.spacing, alpha);
  GridFunction out(g);
  std::array<int, kMaxDim> ext{1, 1, 1};
  for (int k = 0; k < g.n; ++k) ext[k] = g.dims[k];
  parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto c = g.coords(i);
      double best = a(i);
      // Only y with |x - y|^alpha < best can improve.
      const int reach = static_cast<int>(std::floor(std::pow(best, 1.0 / alpha) / g.spacing)) + 1;
      std::array<int, kMaxDim> lo{}, hi{};
      for (int k = 0; k < kMaxDim; ++k) {
        lo[k] = std::max(0, c[k] - reach);
        hi[k] = std::min(ext[k] - 1, c[k] + reach);
      }
      for (int y0 = lo[0]; y0 <= hi[0]; ++y0)
        for (int y1 = lo[1]; y1 <= hi[1]; ++y1)
          for (int y2 = lo[2]; y2 <= hi[2]; ++y2) {
            const double cost = pw(c[0] - y0, c[1] - y1, c[2] - y2);
            if (cost >= best) continue;
            best = std::min(best, a(g.index({y0, y1, y2})) + cost);
          }
      out(i) = best;
    }
  });
  return out;
}

Weight make_weight(GridFunction a, double alpha) {
  const double s = seminorm_sup(a, alpha, Region::whole(a.geometry()));
  return Weight{std::move(a), alpha, s};
}

double double_phase(double a_value, double z_norm, const ExponentConfig& cfg, const DerivedExponents& d, int ell) {
  const double gp = d.gamma[kP][ell];
  const double gq = d.gamma[kQ][ell];
  return double_phase(a_value, z_norm, gp, gq, gq / cfg.q);
}

}  // namespace dptk
