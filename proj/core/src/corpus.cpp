#include "dptk/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dptk {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // Explicit mapping; the distribution classes are not portable bit-for-bit.
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return lo + static_cast<int>(rng() % std::uint64_t(hi - lo + 1)); }

}  // namespace

std::vector<CorpusFunction> fourier_corpus(int n, int count, std::uint64_t seed, int max_freq, int terms) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusFunction> out;
  for (int c = 0; c < count; ++c) {
    struct Term {
      std::array<int, kMaxDim> k{};
      double amp = 0.0, phase = 0.0;
    };
    std::vector<Term> ts(terms);
    for (auto& t : ts) {
      double k2 = 0.0;
      for (int d = 0; d < n; ++d) {
        t.k[d] = uniform_int(rng, -max_freq, max_freq);
        k2 += t.k[d] * t.k[d];
      }
      t.amp = uniform(rng, -1.0, 1.0) / (1.0 + k2);
      t.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    }
    out.push_back({"fourier" + std::to_string(c), [ts, n](const Point& x) {
                     double s = 0.0;
                     for (const auto& t : ts) {
                       double arg = t.phase;
                       for (int d = 0; d < n; ++d) arg += std::numbers::pi * t.k[d] * x[d];
                       s += t.amp * std::cos(arg);
                     }
                     return s;
                   }});
  }
  return out;
}

std::vector<CorpusFunction> bump_corpus(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xB0B0ULL);
  std::vector<CorpusFunction> out;
  for (int c = 0; c < count; ++c) {
    struct Bump {
      Point x{};
      double width = 0.0, amp = 0.0;
    };
    std::vector<Bump> bs(uniform_int(rng, 1, 3));
    for (auto& b : bs) {
      for (int d = 0; d < n; ++d) b.x[d] = uniform(rng, -0.5, 0.5);
      b.width = uniform(rng, 0.15, 0.4);
      b.amp = uniform(rng, 0.5, 1.5);
    }
    out.push_back({"bump" + std::to_string(c), [bs, n](const Point& x) {
                     double s = 0.0;
                     for (const auto& b : bs) {
                       double r2 = 0.0;
                       for (int d = 0; d < n; ++d) r2 += (x[d] - b.x[d]) * (x[d] - b.x[d]);
                       s += b.amp * std::exp(-r2 / (b.width * b.width));
                     }
                     return s;
                   }});
  }
  return out;
}

std::vector<std::uint8_t> random_mask(const GridGeometry& g, std::uint64_t seed, int balls) {
  std::mt19937_64 rng(seed);
  const Point lo = g.lower(), hi = g.upper();
  double extent = hi[0] - lo[0];
  for (int d = 1; d < g.n; ++d) extent = std::min(extent, hi[d] - lo[d]);
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (int b = 0; b < balls; ++b) {
    const double r = uniform(rng, 0.08, 0.25) * extent;
    Point c{};
    for (int d = 0; d < g.n; ++d) c[d] = uniform(rng, lo[d] + r + 2 * g.spacing, hi[d] - r - 2 * g.spacing);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (distance(g.center(i), c, g.n) < r) mask[i] = 1;
  }
  return mask;
}

}  // namespace dptk
