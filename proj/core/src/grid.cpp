#include "dptk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "dptk/error.hpp"
#include "dptk/reduce.hpp"
#include "finite_difference.hpp"

namespace dptk {

GridGeometry GridGeometry::cube(int n, int cells, double lo, double hi) {
  GridGeometry g;
  g.n = n;
  for (int a = 0; a < n; ++a) {
    g.dims[a] = cells;
    g.origin[a] = lo;
  }
  g.spacing = (hi - lo) / cells;
  g.validate();
  return g;
}

std::size_t GridGeometry::size() const {
  std::size_t s = 1;
  for (int a = 0; a < kMaxDim; ++a) s *= static_cast<std::size_t>(dims[a]);
  return s;
}

std::size_t GridGeometry::stride(int axis) const {
  std::size_t s = 1;
  for (int a = kMaxDim - 1; a > axis; --a) s *= static_cast<std::size_t>(dims[a]);
  return s;
}

double GridGeometry::cell_volume() const { return std::pow(spacing, n); }

std::array<int, kMaxDim> GridGeometry::coords(std::size_t index) const {
  std::array<int, kMaxDim> c{};
  for (int a = kMaxDim - 1; a >= 0; --a) {
    c[a] = static_cast<int>(index % dims[a]);
    index /= dims[a];
  }
  return c;
}

std::size_t GridGeometry::index(const std::array<int, kMaxDim>& c) const {
  std::size_t idx = 0;
  for (int a = 0; a < kMaxDim; ++a) idx = idx * dims[a] + c[a];
  return idx;
}

Point GridGeometry::center(std::size_t index) const {
  const auto c = coords(index);
  Point x{};
  for (int a = 0; a < n; ++a) x[a] = origin[a] + (c[a] + 0.5) * spacing;
  return x;
}

Point GridGeometry::upper() const {
  Point x{};
  for (int a = 0; a < n; ++a) x[a] = origin[a] + dims[a] * spacing;
  return x;
}

GridGeometry GridGeometry::refined() const {
  GridGeometry g = *this;
  for (int a = 0; a < n; ++a) g.dims[a] *= 2;
  g.spacing /= 2;
  return g;
}

void GridGeometry::validate() const {
  if (n < 1 || n > kMaxDim) throw InputError("grid dimension must be 1, 2 or 3");
  if (!(spacing > 0) || !std::isfinite(spacing)) throw InputError("grid spacing must be positive");
  for (int a = 0; a < kMaxDim; ++a) {
    if (a < n && dims[a] < 2) throw InputError("grid extent must be at least 2 along every axis");
    if (a >= n && dims[a] != 1) throw InputError("unused grid axes must have extent 1");
    if (!std::isfinite(origin[a])) throw InputError("grid origin must be finite");
  }
}

GridFunction::GridFunction(const GridGeometry& geometry, int components)
    : geom_(geometry), components_(components) {
  geom_.validate();
  if (components < 1) throw InputError("grid function needs at least one component");
  values_.assign(geom_.size() * components_, 0.0);
}

GridFunction::GridFunction(const GridGeometry& geometry, int components, std::vector<double> values)
    : geom_(geometry), components_(components), values_(std::move(values)) {
  geom_.validate();
  if (components < 1) throw InputError("grid function needs at least one component");
  if (values_.size() != geom_.size() * components_)
    throw InputError("grid function has " + std::to_string(values_.size()) + " samples, expected " +
                     std::to_string(geom_.size() * components_));
}

GridFunction GridFunction::component(int comp) const {
  GridFunction out(geom_, 1);
  for (std::size_t i = 0; i < points(); ++i) out(i) = (*this)(i, comp);
  return out;
}

void GridFunction::check_finite() const {
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      const Point x = geom_.center(k / components_);
      std::ostringstream os;
      os << "nonfinite sample at (";
      for (int a = 0; a < geom_.n; ++a) os << (a ? "," : "") << x[a];
      os << ")";
      throw InputError(os.str());
    }
  }
}

Region Region::box(const Point& lo, const Point& hi) {
  Region r;
  r.kind_ = Kind::box;
  r.a_ = lo;
  r.b_ = hi;
  return r;
}

Region Region::ball(const Point& center, double radius) {
  if (!(radius > 0)) throw InputError("ball radius must be positive");
  Region r;
  r.kind_ = Kind::ball;
  r.a_ = center;
  r.radius_ = radius;
  return r;
}

Region Region::mask(std::vector<std::uint8_t> cells) {
  Region r;
  r.kind_ = Kind::mask;
  r.cells_ = std::move(cells);
  return r;
}

Region Region::whole(const GridGeometry& g) { return box(g.lower(), g.upper()); }

double distance(const Point& x, const Point& y, int n) {
  double s = 0.0;
  for (int a = 0; a < n; ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
  return std::sqrt(s);
}

bool Region::contains(const GridGeometry& g, std::size_t index) const {
  switch (kind_) {
    case Kind::mask:
      if (cells_.size() != g.size()) throw InputError("mask length does not match the grid");
      return cells_[index] != 0;
    case Kind::ball: {
      const Point x = g.center(index);
      double s = 0.0;
      for (int a = 0; a < g.n; ++a) s += (x[a] - a_[a]) * (x[a] - a_[a]);
      return s < radius_ * radius_;
    }
    case Kind::box: {
      const Point x = g.center(index);
      for (int a = 0; a < g.n; ++a)
        if (x[a] < a_[a] || x[a] > b_[a]) return false;
      return true;
    }
  }
  return false;
}

std::vector<std::uint8_t> Region::cells(const GridGeometry& g) const {
  if (kind_ == Kind::mask) {
    if (cells_.size() != g.size()) throw InputError("mask length does not match the grid");
    return cells_;
  }
  std::vector<std::uint8_t> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = contains(g, i) ? 1 : 0;
  return out;
}

std::vector<std::size_t> Region::indices(const GridGeometry& g) const {
  std::vector<std::size_t> out;
  if (kind_ == Kind::mask && cells_.size() != g.size()) throw InputError("mask length does not match the grid");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (contains(g, i)) out.push_back(i);
  return out;
}

namespace {

GridGeometry geometry_from_box(const Region& box, std::span<const int> resolution) {
  if (box.kind() != Region::Kind::box) throw InputError("create_grid expects a box region");
  if (resolution.empty() || resolution.size() > static_cast<std::size_t>(kMaxDim))
    throw InputError("resolution must have 1 to 3 entries");
  GridGeometry g;
  g.n = static_cast<int>(resolution.size());
  for (int a = 0; a < g.n; ++a) {
    if (resolution[a] < 2) throw InputError("resolution must be at least 2 per axis");
    if (!(box.hi()[a] > box.lo()[a])) throw InputError("box must have positive extent");
    g.dims[a] = resolution[a];
    g.origin[a] = box.lo()[a];
  }
  g.spacing = (box.hi()[0] - box.lo()[0]) / resolution[0];
  for (int a = 1; a < g.n; ++a) {
    const double h = (box.hi()[a] - box.lo()[a]) / resolution[a];
    if (std::abs(h - g.spacing) > 1e-9 * g.spacing) throw InputError("box and resolution must give a uniform spacing");
  }
  g.validate();
  return g;
}

}  // namespace

GridFunction sample(const GridGeometry& g, const Sampler& f) {
  GridFunction out(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) out(i) = f(g.center(i));
  out.check_finite();
  return out;
}

GridFunction sample(const GridGeometry& g, int components, const VectorSampler& f) {
  GridFunction out(g, components);
  auto v = out.values();
  for (std::size_t i = 0; i < g.size(); ++i) f(g.center(i), v.subspan(i * components, components));
  out.check_finite();
  return out;
}

GridFunction create_grid(const Region& box, std::span<const int> resolution, const Sampler& f) {
  return sample(geometry_from_box(box, resolution), f);
}

GridFunction create_grid(const Region& box, std::span<const int> resolution, int components,
                         const VectorSampler& f) {
  return sample(geometry_from_box(box, resolution), components, f);
}

GridFunction partial_derivative(const GridFunction& u, const MultiIndex& sigma) {
  const GridGeometry& g = u.geometry();
  if (sigma.dim() != g.n) throw InputError("multi-index dimension does not match the grid");
  std::vector<double> cur(u.values().begin(), u.values().end());
  for (int a = 0; a < g.n; ++a)
    if (sigma[a] > 0) cur = detail::apply_axis_derivative(g, u.components(), cur, a, sigma[a]);
  return GridFunction(g, u.components(), std::move(cur));
}

GridFunction derivative_norm(const GridFunction& u, int order) {
  if (order < 0) throw InputError("derivative order must be nonnegative");
  GridFunction out(u.geometry(), 1);
  for (const auto& sigma : indices_of_order(u.dim(), order)) {
    const GridFunction d = partial_derivative(u, sigma);
    for (std::size_t i = 0; i < u.points(); ++i)
      for (int c = 0; c < u.components(); ++c) out(i) += d(i, c) * d(i, c);
  }
  for (double& v : out.values()) v = std::sqrt(v);
  return out;
}

namespace {

std::vector<double> sum_over(const GridFunction& u, const std::vector<std::size_t>& idx, double power, bool use_power) {
  std::vector<double> out(u.components());
  std::vector<double> buf(idx.size());
  for (int c = 0; c < u.components(); ++c) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double v = u(idx[k], c);
      buf[k] = use_power ? std::pow(std::abs(v), power) : v;
    }
    out[c] = pairwise_sum(buf) * u.geometry().cell_volume();
  }
  return out;
}

std::vector<std::size_t> nonempty(const GridFunction& u, const Region& region) {
  auto idx = region.indices(u.geometry());
  if (idx.empty()) throw InputError("region contains no cell centers");
  return idx;
}

}  // namespace

std::vector<double> integrate(const GridFunction& u, const Region& region) {
  return sum_over(u, nonempty(u, region), 0.0, false);
}

std::vector<double> integrate(const GridFunction& u, const Region& region, double power) {
  if (power < 0) throw InputError("integration power must be nonnegative");
  return sum_over(u, nonempty(u, region), power, true);
}

std::vector<double> average(const GridFunction& u, const Region& region) {
  const auto idx = nonempty(u, region);
  auto s = sum_over(u, idx, 0.0, false);
  for (double& v : s) v /= idx.size() * u.geometry().cell_volume();
  return s;
}

std::vector<double> average(const GridFunction& u, const Region& region, double power) {
  if (power < 0) throw InputError("integration power must be nonnegative");
  const auto idx = nonempty(u, region);
  auto s = sum_over(u, idx, power, true);
  for (double& v : s) v /= idx.size() * u.geometry().cell_volume();
  return s;
}

std::vector<double> weighted_average(const GridFunction& u, const Region& region, const GridFunction& eta) {
  if (!(eta.geometry() == u.geometry()) || eta.components() != 1)
    throw InputError("weight must be a scalar field on the same grid");
  const auto idx = nonempty(u, region);
  std::vector<double> buf(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) buf[k] = eta(idx[k]);
  const double norm = pairwise_sum(buf);
  if (norm == 0.0) throw InputError("degenerate weight");
  std::vector<double> out(u.components());
  for (int c = 0; c < u.components(); ++c) {
    for (std::size_t k = 0; k < idx.size(); ++k) buf[k] = u(idx[k], c) * eta(idx[k]);
    out[c] = pairwise_sum(buf) / norm;
  }
  return out;
}

double measure(const GridGeometry& g, const Region& region) {
  return static_cast<double>(region.indices(g).size()) * g.cell_volume();
}

namespace {

void require_same(const GridFunction& a, const GridFunction& b) {
  if (!(a.geometry() == b.geometry())) throw InputError("grid functions live on different grids");
  if (a.components() != b.components() && b.components() != 1)
    throw InputError("grid functions have incompatible component counts");
}

template <typename Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
  require_same(a, b);
  GridFunction out(a.geometry(), a.components());
  for (std::size_t i = 0; i < a.points(); ++i)
    for (int c = 0; c < a.components(); ++c) out(i, c) = op(a(i, c), b(i, b.components() == 1 ? 0 : c));
  return out;
}

}  // namespace

GridFunction abs(const GridFunction& u) {
  GridFunction out = u;
  for (double& v : out.values()) v = std::abs(v);
  return out;
}

GridFunction pow(const GridFunction& u, double power) {
  GridFunction out = u;
  for (double& v : out.values()) v = std::pow(std::abs(v), power);
  return out;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

GridFunction operator*(double c, const GridFunction& a) {
  GridFunction out = a;
  for (double& v : out.values()) v *= c;
  return out;
}

GridFunction masked(const GridFunction& u, std::span<const std::uint8_t> cells) {
  if (cells.size() != u.points()) throw InputError("mask length does not match the grid");
  GridFunction out = u;
  for (std::size_t i = 0; i < u.points(); ++i)
    if (!cells[i])
      for (int c = 0; c < u.components(); ++c) out(i, c) = 0.0;
  return out;
}

double max_value(const GridFunction& u) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : u.values()) m = std::max(m, v);
  return m;
}

}  // namespace dptk
