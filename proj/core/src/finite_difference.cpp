#include "finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dptk/error.hpp"

namespace dptk::detail {

std::vector<double> fornberg_weights(std::span<const double> x, int m) {
  const int np = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(np, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < np; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(np);
  for (int i = 0; i < np; ++i) w[i] = c[i][m];
  return w;
}

namespace {

struct Stencil {
  int first = 0;  // offset of the first node relative to the target
  std::vector<double> weights;
};

Stencil make_stencil(int first, int count, int order, double h) {
  std::vector<double> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = first + i;
  Stencil s{first, fornberg_weights(nodes, order)};
  const double scale = std::pow(h, -order);
  for (double& w : s.weights) w *= scale;
  return s;
}

}  // namespace

std::vector<double> apply_axis_derivative(const GridGeometry& g, int components, std::span<const double> in,
                                          int axis, int order) {
  if (order == 0) return {in.begin(), in.end()};
  const int len = g.dims[axis];
  const int central = 2 * ((order + 1) / 2) + 1;
  const int half = central / 2;
  const int boundary = order + 2;
  if (len < std::max(central, boundary))
    throw InputError("derivative of order " + std::to_string(order) + " along axis " + std::to_string(axis) +
                     " needs at least " + std::to_string(std::max(central, boundary)) + " cells, grid has " +
                     std::to_string(len));

  std::vector<Stencil> per_position(len);
  const Stencil interior = make_stencil(-half, central, order, g.spacing);
  for (int i = 0; i < len; ++i) {
    if (i - half >= 0 && i + half <= len - 1) {
      per_position[i] = interior;
    } else {
      const int start = std::clamp(i - boundary / 2, 0, len - boundary);
      per_position[i] = make_stencil(start - i, boundary, order, g.spacing);
    }
  }

  std::vector<double> out(in.size(), 0.0);
  const std::size_t stride = g.stride(axis) * components;
  const std::size_t lines = g.size() / len;
  const std::size_t inner = g.stride(axis);
  for (std::size_t line = 0; line < lines; ++line) {
    const std::size_t outer = line / inner;
    const std::size_t rem = line % inner;
    const std::size_t base = (outer * len * inner + rem) * components;
    for (int i = 0; i < len; ++i) {
      const Stencil& s = per_position[i];
      for (int c = 0; c < components; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < s.weights.size(); ++k)
          acc += s.weights[k] * in[base + static_cast<std::size_t>(i + s.first + static_cast<int>(k)) * stride + c];
        out[base + static_cast<std::size_t>(i) * stride + c] = acc;
      }
    }
  }
  return out;
}

}  // namespace dptk::detail
