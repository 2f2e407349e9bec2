#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dptk/multiindex.hpp"

namespace dptk {

// Uniform lattice over an axis-aligned box. Axis 0 varies slowest; unused
// axes (>= n) have extent 1.
struct GridGeometry {
  int n = 1;
  std::array<int, kMaxDim> dims{1, 1, 1};
  Point origin{};
  double spacing = 1.0;

  static GridGeometry cube(int n, int cells, double lo, double hi);

  std::size_t size() const;
  std::size_t stride(int axis) const;
  double cell_volume() const;
  std::array<int, kMaxDim> coords(std::size_t index) const;
  std::size_t index(const std::array<int, kMaxDim>& c) const;
  Point center(std::size_t index) const;
  Point lower() const { return origin; }
  Point upper() const;
  // Ratio-2 refinement of the same box.
  GridGeometry refined() const;
  void validate() const;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

class GridFunction {
 public:
  explicit GridFunction(const GridGeometry& geometry, int components = 1);
  GridFunction(const GridGeometry& geometry, int components, std::vector<double> values);

  const GridGeometry& geometry() const { return geom_; }
  int dim() const { return geom_.n; }
  int components() const { return components_; }
  std::size_t points() const { return geom_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator()(std::size_t point, int comp = 0) const { return values_[point * components_ + comp]; }
  double& operator()(std::size_t point, int comp = 0) { return values_[point * components_ + comp]; }

  GridFunction component(int comp) const;
  // Throws InputError naming the first nonfinite sample.
  void check_finite() const;

 private:
  GridGeometry geom_;
  int components_;
  std::vector<double> values_;
};

class Region {
 public:
  enum class Kind { box, ball, mask };

  static Region box(const Point& lo, const Point& hi);
  static Region ball(const Point& center, double radius);
  static Region mask(std::vector<std::uint8_t> cells);
  static Region whole(const GridGeometry& g);

  Kind kind() const { return kind_; }
  const Point& center() const { return a_; }
  double radius() const { return radius_; }
  const Point& lo() const { return a_; }
  const Point& hi() const { return b_; }
  const std::vector<std::uint8_t>& mask_cells() const { return cells_; }

  bool contains(const GridGeometry& g, std::size_t index) const;
  std::vector<std::uint8_t> cells(const GridGeometry& g) const;
  std::vector<std::size_t> indices(const GridGeometry& g) const;

 private:
  Kind kind_ = Kind::box;
  Point a_{};
  Point b_{};
  double radius_ = 0.0;
  std::vector<std::uint8_t> cells_;
};

double distance(const Point& x, const Point& y, int n);

using Sampler = std::function<double(const Point&)>;
using VectorSampler = std::function<void(const Point&, std::span<double>)>;

// Samples at cell centers of `box`, which must be a box region whose extents
// give one common spacing for the given resolution.
GridFunction create_grid(const Region& box, std::span<const int> resolution, const Sampler& f);
GridFunction create_grid(const Region& box, std::span<const int> resolution, int components,
                         const VectorSampler& f);
GridFunction sample(const GridGeometry& g, const Sampler& f);
GridFunction sample(const GridGeometry& g, int components, const VectorSampler& f);

GridFunction partial_derivative(const GridFunction& u, const MultiIndex& sigma);
// Euclidean norm over all |sigma| == order and all components.
GridFunction derivative_norm(const GridFunction& u, int order);

// Midpoint sums over cells whose centers lie in the region, per component.
std::vector<double> integrate(const GridFunction& u, const Region& region);
std::vector<double> integrate(const GridFunction& u, const Region& region, double power);
std::vector<double> average(const GridFunction& u, const Region& region);
std::vector<double> average(const GridFunction& u, const Region& region, double power);
std::vector<double> weighted_average(const GridFunction& u, const Region& region, const GridFunction& eta);
double measure(const GridGeometry& g, const Region& region);

// Pointwise helpers.
GridFunction abs(const GridFunction& u);
GridFunction pow(const GridFunction& u, double power);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& a);
GridFunction masked(const GridFunction& u, std::span<const std::uint8_t> cells);
double max_value(const GridFunction& u);

}  // namespace dptk
