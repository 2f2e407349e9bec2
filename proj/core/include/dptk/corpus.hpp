#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dptk/grid.hpp"

namespace dptk {

inline constexpr std::uint64_t kCorpusSeed = 0x5EED;

struct CorpusFunction {
  std::string name;
  Sampler f;
};

// Truncated cosine series with decaying amplitudes, frequencies in [-max_freq, max_freq]^n.
std::vector<CorpusFunction> fourier_corpus(int n, int count, std::uint64_t seed, int max_freq = 3, int terms = 4);
// Sums of one to three Gaussian bumps centered in [-1/2, 1/2]^n.
std::vector<CorpusFunction> bump_corpus(int n, int count, std::uint64_t seed);

// Union of a few random balls inside the grid box, kept off the boundary.
std::vector<std::uint8_t> random_mask(const GridGeometry& g, std::uint64_t seed, int balls = 4);

}  // namespace dptk
