#pragma once

#include <cstddef>
#include <span>

namespace dptk {

// Sum in a fixed pairwise tree so the result does not depend on how the
// input was produced.
double pairwise_sum(std::span<const double> v);

}  // namespace dptk
