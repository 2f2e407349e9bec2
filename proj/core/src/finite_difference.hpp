#pragma once

#include <span>
#include <vector>

#include "dptk/grid.hpp"

namespace dptk::detail {

// Weights for the derivative of order `order` at 0 from samples at `nodes`.
std::vector<double> fornberg_weights(std::span<const double> nodes, int order);

// Applies d^order/dx_axis^order to every component of `in`.
std::vector<double> apply_axis_derivative(const GridGeometry& g, int components, std::span<const double> in,
                                          int axis, int order);

}  // namespace dptk::detail
