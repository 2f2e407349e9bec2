#include "dptk/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "dptk/cutoff.hpp"
#include "dptk/error.hpp"
#include "dptk/parallel.hpp"
#include "json_util.hpp"

namespace dptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform buckets over ball centers; keeps pair searches linear.
class Buckets {
 public:
  Buckets(int n, double side) : n_(n), side_(side) {}

  void insert(const Point& x, int id) { map_[key(cell(x))].push_back(id); }

  // Calls f(id) for everything stored within one bucket of x.
  template <class F>
  void near(const Point& x, F&& f) const {
    const auto c = cell(x);
    std::array<int, kMaxDim> lo{}, hi{};
    for (int d = 0; d < n_; ++d) {
      lo[d] = c[d] - 1;
      hi[d] = c[d] + 1;
    }
    std::array<std::int64_t, kMaxDim> q{};
    for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0])
      for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1])
        for (q[2] = lo[2]; q[2] <= hi[2]; ++q[2]) {
          const auto it = map_.find(key(q));
          if (it == map_.end()) continue;
          for (int id : it->second) f(id);
        }
  }

 private:
  std::array<std::int64_t, kMaxDim> cell(const Point& x) const {
    std::array<std::int64_t, kMaxDim> c{};
    for (int d = 0; d < n_; ++d) c[d] = static_cast<std::int64_t>(std::floor(x[d] / side_));
    return c;
  }
  static std::uint64_t key(const std::array<std::int64_t, kMaxDim>& c) {
    std::uint64_t k = 0;
    for (int d = 0; d < kMaxDim; ++d) k = (k << 21) | (static_cast<std::uint64_t>(c[d]) & 0x1FFFFF);
    return k;
  }

  int n_;
  double side_;
  std::unordered_map<std::uint64_t, std::vector<int>> map_;
};

double largest_radius(const std::vector<WhitneyBall>& balls) {
  double r = 0.0;
  for (const auto& b : balls) r = std::max(r, b.radius);
  return r;
}

// f(i, j) for i < j whenever the centers are closer than reach * (r_i + r_j).
template <class F>
void close_pairs(const std::vector<WhitneyBall>& balls, int n, double reach, F&& f) {
  if (balls.empty()) return;
  Buckets buckets(n, 2.0 * reach * largest_radius(balls));
  for (std::size_t i = 0; i < balls.size(); ++i) buckets.insert(balls[i].center, static_cast<int>(i));
  for (std::size_t i = 0; i < balls.size(); ++i)
    buckets.near(balls[i].center, [&](int j) {
      if (static_cast<std::size_t>(j) <= i) return;
      if (distance(balls[i].center, balls[j].center, n) < reach * (balls[i].radius + balls[j].radius))
        f(i, static_cast<std::size_t>(j));
    });
}

// Squared-distance transform along one line (lower envelope of parabolas).
void edt_line(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int len = static_cast<int>(f.size());
  int k = 0;
  int first = -1;
  for (int q = 0; q < len; ++q)
    if (f[q] < kInf) {
      first = q;
      break;
    }
  if (first < 0) return;
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = first + 1; q < len; ++q) {
    if (f[q] == kInf) continue;
    double s;
    while (true) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < len; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
  f = d;
}

// Cell-index box of lattice points within `radius` of x (clipped to grid,
// optionally extended by `pad` cells on each side).
void lattice_box(const GridGeometry& g, const Point& x, double radius, int pad, std::array<int, kMaxDim>& lo,
                 std::array<int, kMaxDim>& hi) {
  for (int k = 0; k < kMaxDim; ++k) {
    if (k >= g.n) {
      lo[k] = hi[k] = 0;
      continue;
    }
    const double c = (x[k] - g.origin[k]) / g.spacing - 0.5;
    const double w = radius / g.spacing;
    lo[k] = std::max(-pad, static_cast<int>(std::floor(c - w)));
    hi[k] = std::min(g.dims[k] - 1 + pad, static_cast<int>(std::ceil(c + w)));
  }
}

template <class F>
void for_box(const std::array<int, kMaxDim>& lo, const std::array<int, kMaxDim>& hi, F&& f) {
  for (int a = lo[0]; a <= hi[0]; ++a)
    for (int b = lo[1]; b <= hi[1]; ++b)
      for (int c = lo[2]; c <= hi[2]; ++c) f(std::array<int, kMaxDim>{a, b, c});
}

Point lattice_point(const GridGeometry& g, const std::array<int, kMaxDim>& c) {
  Point p{};
  for (int k = 0; k < g.n; ++k) p[k] = g.origin[k] + (c[k] + 0.5) * g.spacing;
  return p;
}

bool in_grid(const GridGeometry& g, const std::array<int, kMaxDim>& c) {
  for (int k = 0; k < g.n; ++k)
    if (c[k] < 0 || c[k] >= g.dims[k]) return false;
  return true;
}

void check_mask(const GridGeometry& g, std::span<const std::uint8_t> mask) {
  if (mask.size() != g.size()) throw InputError("mask size does not match grid");
}

}  // namespace

std::vector<double> distance_to_complement(const GridGeometry& g, std::span<const std::uint8_t> mask) {
  check_mask(g, mask);
  std::array<int, kMaxDim> pd{1, 1, 1};
  for (int k = 0; k < g.n; ++k) pd[k] = g.dims[k] + 2;
  const std::size_t total = std::size_t(pd[0]) * pd[1] * pd[2];
  std::vector<double> f(total, 0.0);
  auto pidx = [&](int a, int b, int c) { return (std::size_t(a) * pd[1] + b) * pd[2] + c; };
  const int off1 = g.n > 1 ? 1 : 0, off2 = g.n > 2 ? 1 : 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    f[pidx(c[0] + 1, c[1] + off1, c[2] + off2)] = mask[i] ? kInf : 0.0;
  }
  for (int axis = 0; axis < g.n; ++axis) {
    const int len = pd[axis];
    std::vector<double> line(len), tmp(len), z(len + 1);
    std::vector<int> v(len);
    std::array<int, 3> c{};
    const int o1 = axis == 0 ? 1 : 0, o2 = axis == 2 ? 1 : 2;
    for (c[o1] = 0; c[o1] < pd[o1]; ++c[o1])
      for (c[o2] = 0; c[o2] < pd[o2]; ++c[o2]) {
        for (c[axis] = 0; c[axis] < len; ++c[axis]) line[c[axis]] = f[pidx(c[0], c[1], c[2])];
        edt_line(line, tmp, v, z);
        for (c[axis] = 0; c[axis] < len; ++c[axis]) f[pidx(c[0], c[1], c[2])] = line[c[axis]];
      }
  }
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    out[i] = std::sqrt(f[pidx(c[0] + 1, c[1] + off1, c[2] + off2)]) * g.spacing;
  }
  return out;
}

std::vector<std::size_t> cells_in_ball(const GridGeometry& g, const Point& x, double r) {
  std::vector<std::size_t> out;
  std::array<int, kMaxDim> lo{}, hi{};
  lattice_box(g, x, r, 0, lo, hi);
  for_box(lo, hi, [&](const std::array<int, kMaxDim>& q) {
    const auto j = g.index(q);
    if (distance(g.center(j), x, g.n) < r) out.push_back(j);
  });
  return out;
}

std::vector<std::vector<int>> neighbor_sets(const std::vector<WhitneyBall>& balls, int n) {
  std::vector<std::vector<int>> a(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) a[i].push_back(static_cast<int>(i));
  close_pairs(balls, n, 0.75, [&](std::size_t i, std::size_t j) {
    a[i].push_back(static_cast<int>(j));
    a[j].push_back(static_cast<int>(i));
  });
  for (auto& row : a) std::sort(row.begin(), row.end());
  return a;
}

WhitneyCover cover(const GridGeometry& g, std::span<const std::uint8_t> open_mask, double max_radius) {
  if (!(max_radius > 0.0)) throw InputError("cover needs a positive radius bound");
  const auto d = distance_to_complement(g, open_mask);
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (open_mask[i]) cand.push_back(i);
  std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  WhitneyCover c;
  c.n = g.n;
  c.max_radius = max_radius;
  std::vector<std::uint8_t> covered(g.size(), 0);
  std::size_t remaining = cand.size();
  // Candidates come in decreasing radius, so the first one bounds every ball.
  const double r_top = cand.empty() ? max_radius : std::min(d[cand.front()] / 12.0, max_radius);
  Buckets kept(g.n, 0.5 * r_top);
  for (std::size_t i : cand) {
    if (remaining == 0) break;
    const Point x = g.center(i);
    const double r = std::min(d[i] / 12.0, max_radius);
    bool free = true;
    kept.near(x, [&](int k) {
      const auto& b = c.balls[k];
      if (distance(x, b.center, g.n) < 0.25 * (r + b.radius)) free = false;
    });
    if (!free) continue;
    kept.insert(x, static_cast<int>(c.balls.size()));
    c.balls.push_back({x, r, d[i]});
    std::array<int, kMaxDim> lo{}, hi{};
    lattice_box(g, x, 0.5 * r, 0, lo, hi);
    for_box(lo, hi, [&](const std::array<int, kMaxDim>& q) {
      const auto j = g.index(q);
      if (!covered[j] && open_mask[j] && distance(g.center(j), x, g.n) < 0.5 * r) {
        covered[j] = 1;
        --remaining;
      }
    });
  }
  c.neighbors = neighbor_sets(c.balls, g.n);
  return c;
}

double ball_volume(double r, int n) {
  switch (n) {
    case 1: return 2.0 * r;
    case 2: return std::numbers::pi * r * r;
    case 3: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
  throw InputError("dimension must be 1, 2 or 3");
}

double ball_intersection_volume(double a, double b, double d, int n) {
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return ball_volume(std::min(a, b), n);
  switch (n) {
    case 1: return a + b - d;
    case 2: {
      const double ca = std::clamp((d * d + a * a - b * b) / (2 * d * a), -1.0, 1.0);
      const double cb = std::clamp((d * d + b * b - a * a) / (2 * d * b), -1.0, 1.0);
      const double k = std::sqrt(std::max(0.0, (-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b)));
      return a * a * std::acos(ca) + b * b * std::acos(cb) - 0.5 * k;
    }
    case 3: {
      const double s = a + b - d;
      return std::numbers::pi * s * s * (d * d + 2 * d * b - 3 * b * b + 2 * d * a + 6 * a * b - 3 * a * a) / (12 * d);
    }
  }
  throw InputError("dimension must be 1, 2 or 3");
}

CoverReport verify_cover(const WhitneyCover& c, const GridGeometry& g, std::span<const std::uint8_t> mask) {
  check_mask(g, mask);
  const int n = g.n;
  const auto& B = c.balls;
  CoverReport rep;

  // (W1) every mask cell in some half ball.
  std::vector<std::uint8_t> covered(g.size(), 0);
  for (const auto& b : B) {
    std::array<int, kMaxDim> lo{}, hi{};
    lattice_box(g, b.center, 0.5 * b.radius, 0, lo, hi);
    for_box(lo, hi, [&](const std::array<int, kMaxDim>& q) {
      const auto j = g.index(q);
      if (distance(g.center(j), b.center, n) < 0.5 * b.radius) covered[j] = 1;
    });
  }
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask[i] && !covered[i]) ++uncovered;
  rep.checks.push_back(at_most("W1_uncovered_cells", double(uncovered), 0.0));

  double worst_r = 0.0;
  for (const auto& b : B) worst_r = std::max(worst_r, b.radius / c.max_radius);
  rep.checks.push_back(at_most("W2_radius_over_bound", worst_r, 1.0));

  // (W3) brute force over the lattice padded by one layer of complement.
  std::vector<double> nearest(B.size(), kInf);
  parallel_for(B.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i) {
      std::array<int, kMaxDim> lo{}, hi{};
      lattice_box(g, B[i].center, 16.0 * B[i].radius, 1, lo, hi);
      for (int k = n; k < kMaxDim; ++k) lo[k] = hi[k] = 0;
      double best = kInf;
      for_box(lo, hi, [&](const std::array<int, kMaxDim>& q) {
        if (in_grid(g, q) && mask[g.index(q)]) return;
        best = std::min(best, distance(lattice_point(g, q), B[i].center, n));
      });
      nearest[i] = best;
    }
  });
  std::size_t w3_inner = 0, w3_outer = 0;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (nearest[i] < 8.0 * B[i].radius) ++w3_inner;
    if (!(nearest[i] < 16.0 * B[i].radius)) ++w3_outer;
  }
  rep.checks.push_back(at_most("W3_8B_hits_complement", double(w3_inner), 0.0));
  rep.checks.push_back(at_most("W3_16B_misses_complement", double(w3_outer), 0.0));

  double w4 = 1.0;
  std::size_t w5 = 0;
  close_pairs(B, n, 1.0, [&](std::size_t i, std::size_t j) {
    w4 = std::max({w4, B[i].radius / B[j].radius, B[j].radius / B[i].radius});
    if (distance(B[i].center, B[j].center, n) < 0.25 * (B[i].radius + B[j].radius)) ++w5;
  });
  rep.checks.push_back(at_most("W4_radius_ratio", w4, 2.0));
  rep.checks.push_back(at_most("W5_quarter_ball_overlaps", double(w5), 0.0));

  for (const auto& a : c.neighbors) rep.max_neighbors = std::max(rep.max_neighbors, a.size());
  rep.checks.push_back(at_most("W6_max_neighbors", double(rep.max_neighbors), std::pow(4.0, n + 2)));

  // (W7) closed-form lens volumes, plus the inner ball B(z, rho/8).
  double ratio = 0.0, min_rho = kInf, incl = 0.0;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (int j : c.neighbors[i]) {
      const double ri = B[i].radius, rj = 0.75 * B[j].radius;
      const double dist = distance(B[i].center, B[j].center, n);
      const double lens = ball_intersection_volume(ri, rj, dist, n);
      const double big = std::max(ball_volume(ri, n), ball_volume(B[j].radius, n));
      ratio = std::max(ratio, lens > 0.0 ? big / lens : kInf);
      double rho, t;
      if (dist <= std::abs(ri - rj)) {
        rho = std::min(ri, rj);
        t = ri <= rj ? 0.0 : dist;
      } else {
        t = 0.5 * (dist + ri - rj);
        rho = ri - t;
      }
      min_rho = std::min(min_rho, rho / ri);
      // z at distance t from x_i towards x_j; excess of B(z, rho/8) beyond both balls.
      const double to_j = std::abs(dist - t);
      incl = std::max({incl, std::abs(t) + rho / 8 - ri, to_j + rho / 8 - rj});
    }
  rep.overlap_ratio = ratio;
  rep.min_rho_ratio = B.empty() ? 1.0 : min_rho;
  rep.checks.push_back(at_most("W7_overlap_ratio", ratio, std::pow(128.0, n)));
  rep.checks.push_back({"W7_rho_over_r", rep.min_rho_ratio >= 0.125, rep.min_rho_ratio, 0.125, 0.0});
  rep.checks.push_back(at_most("W7_inner_ball_excess", incl, 0.0, 0.0));
  rep.checks.back().pass = incl <= 1e-12 * (1.0 + c.max_radius);
  rep.checks.back().tolerance = 1e-12;
  return rep;
}

PartitionOfUnity::PartitionOfUnity(const WhitneyCover& c, const GridGeometry& g, std::span<const std::uint8_t> mask,
                                   int order)
    : cover_(c), g_(g), order_(order) {
  check_mask(g, mask);
  psi_.assign(g.size(), {});
  ball_cells_.assign(c.balls.size(), {});
  std::vector<double> sum(g.size(), 0.0);
  for (std::size_t b = 0; b < c.balls.size(); ++b) {
    const auto& ball = c.balls[b];
    std::array<int, kMaxDim> lo{}, hi{};
    lattice_box(g, ball.center, 0.75 * ball.radius, 0, lo, hi);
    for_box(lo, hi, [&](const std::array<int, kMaxDim>& q) {
      const auto j = g.index(q);
      const double phi = bump(static_cast<int>(b), g.center(j));
      if (phi > 0.0) {
        psi_[j].emplace_back(static_cast<int>(b), phi);
        sum[j] += phi;
        ball_cells_[b].push_back(j);
      }
    });
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (mask[j] && !(sum[j] >= 1.0))
      throw InputError("mask cell " + std::to_string(j) + " is not covered by any half ball");
    for (auto& [b, v] : psi_[j]) v /= sum[j];
  }
}

double PartitionOfUnity::bump(int ball, const Point& x) const {
  const auto& b = cover_.balls[ball];
  return radial_cutoff(x, b.center, 0.5 * b.radius, 0.75 * b.radius, g_.n);
}

Jet PartitionOfUnity::bump_jet(int ball, const Point& x) const {
  const auto& b = cover_.balls[ball];
  return radial_cutoff_jet(x, b.center, 0.5 * b.radius, 0.75 * b.radius, g_.n, order_);
}

WeightedCells PartitionOfUnity::cells(int ball) const {
  WeightedCells wc;
  for (std::size_t j : ball_cells_[ball])
    for (const auto& [b, v] : psi_[j])
      if (b == ball) {
        wc.index.push_back(j);
        wc.weight.push_back(v);
      }
  return wc;
}

std::vector<std::pair<int, Jet>> PartitionOfUnity::psi_jets(std::size_t cell) const {
  const Point x = g_.center(cell);
  std::vector<std::pair<int, Jet>> phis;
  Jet total = Jet::constant(g_.n, order_, 0.0);
  for (const auto& [b, v] : psi_[cell]) {
    phis.emplace_back(b, bump_jet(b, x));
    total += phis.back().second;
  }
  if (phis.empty()) return phis;
  const Jet inv = total.reciprocal();
  for (auto& [b, j] : phis) j = j * inv;
  return phis;
}

std::optional<Jet> PartitionOfUnity::psi_jet_at(int ball, const Point& x) const {
  const auto& self = cover_.balls[ball];
  if (!(distance(x, self.center, g_.n) < 0.75 * self.radius)) return std::nullopt;
  bool in_half = false;
  for (int k : cover_.neighbors[ball]) {
    const auto& b = cover_.balls[k];
    if (distance(x, b.center, g_.n) < 0.5 * b.radius) {
      in_half = true;
      break;
    }
  }
  if (!in_half) return std::nullopt;
  Jet total = Jet::constant(g_.n, order_, 0.0);
  Jet own = total;
  for (int k : cover_.neighbors[ball]) {
    const auto& b = cover_.balls[k];
    if (!(distance(x, b.center, g_.n) < 0.75 * b.radius)) continue;
    Jet j = bump_jet(k, x);
    if (k == ball) own = j;
    total += j;
  }
  return own * total.reciprocal();
}

namespace {

// Value, gradient and Hessian; enough for (P2) up to order two.
struct Quadratic {
  double v = 0.0;
  std::array<double, kMaxDim> g{};
  std::array<std::array<double, kMaxDim>, kMaxDim> h{};
};

Quadratic radial_quadratic(const Point& x, const WhitneyBall& b, int n) {
  Quadratic q;
  const double rho = distance(x, b.center, n);
  const auto prof = radial_cutoff_profile(rho, 0.5 * b.radius, 0.75 * b.radius);
  q.v = prof.value;
  if (prof.d1 == 0.0 && prof.d2 == 0.0) return q;
  std::array<double, kMaxDim> e{};
  for (int i = 0; i < n; ++i) e[i] = (x[i] - b.center[i]) / rho;
  for (int i = 0; i < n; ++i) {
    q.g[i] = prof.d1 * e[i];
    for (int j = 0; j < n; ++j)
      q.h[i][j] = prof.d2 * e[i] * e[j] + prof.d1 / rho * ((i == j ? 1.0 : 0.0) - e[i] * e[j]);
  }
  return q;
}

// psi = f / s by the quotient rule; returns |psi|, |D psi|, |D^2 psi| with
// each distinct partial counted once.
std::array<double, 3> quotient_norms(const Quadratic& f, const Quadratic& s, int n) {
  const double inv = 1.0 / s.v;
  std::array<double, kMaxDim> g{};
  double g2 = 0.0;
  for (int i = 0; i < n; ++i) {
    g[i] = (f.g[i] - f.v * s.g[i] * inv) * inv;
    g2 += g[i] * g[i];
  }
  double h2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double hij = (f.h[i][j] - g[i] * s.g[j] - g[j] * s.g[i] - f.v * inv * s.h[i][j]) * inv;
      h2 += hij * hij;
    }
  return {std::abs(f.v * inv), std::sqrt(g2), std::sqrt(h2)};
}

}  // namespace

std::vector<double> PartitionOfUnity::derivative_norms_at(int ball, const Point& x) const {
  if (order_ > 2) {
    const auto jet = psi_jet_at(ball, x);
    if (!jet) return {};
    std::vector<double> out(order_ + 1);
    for (int l = 0; l <= order_; ++l) out[l] = jet->derivative_norm(l);
    return out;
  }
  const auto& self = cover_.balls[ball];
  if (!(distance(x, self.center, g_.n) < 0.75 * self.radius)) return {};
  bool in_half = false;
  Quadratic total, own;
  for (int k : cover_.neighbors[ball]) {
    const auto& b = cover_.balls[k];
    const double dist = distance(x, b.center, g_.n);
    if (!(dist < 0.75 * b.radius)) continue;
    if (dist < 0.5 * b.radius) in_half = true;
    const auto q = radial_quadratic(x, b, g_.n);
    if (k == ball) own = q;
    total.v += q.v;
    for (int i = 0; i < g_.n; ++i) {
      total.g[i] += q.g[i];
      for (int j = 0; j < g_.n; ++j) total.h[i][j] += q.h[i][j];
    }
  }
  if (!in_half) return {};
  const auto norms = quotient_norms(own, total, g_.n);
  return {norms.begin(), norms.begin() + order_ + 1};
}

PartitionReport verify_partition(const PartitionOfUnity& pu, std::span<const std::uint8_t> mask, bool derivatives) {
  const auto& g = pu.geometry();
  const auto& c = pu.cover();
  PartitionReport rep;
  std::size_t outside = 0, below_half = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Point x = g.center(j);
    double s = 0.0;
    for (const auto& [b, v] : pu.at(j)) {
      const auto& ball = c.balls[b];
      const double dist = distance(x, ball.center, g.n);
      if (!(dist < 0.75 * ball.radius) && v != 0.0) ++outside;
      if (dist < 0.5 * ball.radius) {
        if (pu.bump(b, x) < 1.0) ++below_half;
        rep.min_psi_on_half = std::min(rep.min_psi_on_half, v);
      }
      s += v;
    }
    if (mask[j]) rep.sum_residual = std::max(rep.sum_residual, std::abs(s - 1.0));
  }
  rep.checks.push_back(at_most("P1_support_outside_three_quarter", double(outside), 0.0));
  rep.checks.push_back(at_most("P1_bump_below_one_on_half", double(below_half), 0.0));
  rep.checks.push_back(at_most("P3_sum_residual", rep.sum_residual, 1e-10));

  if (!derivatives) return rep;

  // (P2) is sampled on a lattice fixed relative to each ball, so small balls
  // are resolved as well as large ones and the sup does not depend on h.
  const int order = pu.order();
  const int per_axis = g.n == 1 ? 129 : g.n == 2 ? 33 : 9;
  rep.lattice_points = per_axis;
  std::vector<std::vector<double>> per_ball(c.balls.size(), std::vector<double>(order + 1, 0.0));
  parallel_for(c.balls.size(), [&](std::size_t b0, std::size_t b1) {
    for (std::size_t i = b0; i < b1; ++i) {
      const auto& ball = c.balls[i];
      std::array<int, kMaxDim> q{};
      const std::size_t total = static_cast<std::size_t>(std::pow(per_axis, g.n));
      for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        Point x = ball.center;
        for (int d = 0; d < g.n; ++d) {
          q[d] = static_cast<int>(rest % per_axis);
          rest /= per_axis;
          x[d] += 0.75 * ball.radius * (2.0 * q[d] / (per_axis - 1) - 1.0);
        }
        const auto norms = pu.derivative_norms_at(static_cast<int>(i), x);
        if (norms.empty()) continue;
        for (int l = 0; l <= order; ++l)
          per_ball[i][l] = std::max(per_ball[i][l], norms[l] * std::pow(ball.radius, l));
      }
    }
  });
  rep.derivative_constants.assign(order + 1, 0.0);
  for (const auto& row : per_ball)
    for (int l = 0; l <= order; ++l) rep.derivative_constants[l] = std::max(rep.derivative_constants[l], row[l]);
  rep.checks.push_back(at_most("P2_order0_constant", rep.derivative_constants[0], 1.0, 1e-12));
  for (int l = 1; l <= order; ++l) {
    const double v = rep.derivative_constants[l];
    rep.checks.push_back({"P2_order" + std::to_string(l) + "_constant", std::isfinite(v), v, kInf, 0.0});
  }
  return rep;
}

std::string cover_json(const WhitneyCover& c) {
  detail::Json j;
  j["dimension"] = c.n;
  j["max_radius"] = c.max_radius;
  detail::Json balls = detail::Json::array();
  for (std::size_t i = 0; i < c.balls.size(); ++i) {
    detail::Json b;
    detail::Json x = detail::Json::array();
    for (int k = 0; k < c.n; ++k) x.push_back(c.balls[i].center[k]);
    b["center"] = x;
    b["radius"] = c.balls[i].radius;
    b["neighbors"] = c.neighbors[i];
    balls.push_back(b);
  }
  j["balls"] = balls;
  return detail::dump17(j);
}

}  // namespace dptk
