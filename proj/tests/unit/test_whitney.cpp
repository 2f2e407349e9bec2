#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dptk/corpus.hpp"
#include "dptk/whitney.hpp"

using namespace dptk;

namespace {

std::vector<std::uint8_t> interval_mask(const GridGeometry& g, double lo, double hi) {
  std::vector<std::uint8_t> m(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.center(i)[0];
    m[i] = x > lo && x < hi;
  }
  return m;
}

}  // namespace

TEST(Whitney, EmptyMaskEmptyCover) {
  const auto g = GridGeometry::cube(2, 16, -1.0, 1.0);
  EXPECT_TRUE(cover(g, std::vector<std::uint8_t>(g.size(), 0), 0.25).balls.empty());
}

TEST(Whitney, MidpointBallOfUnitIntervalObeysWindow) {
  // 8r <= 1/2 <= 16r for the ball at x = 1/2.
  const auto g = GridGeometry::cube(1, 512, -1.0, 2.0);
  const auto mask = interval_mask(g, 0.0, 1.0);
  const auto c = cover(g, mask, 1.0);
  ASSERT_FALSE(c.balls.empty());
  const auto& b = c.balls.front();
  EXPECT_NEAR(b.center[0], 0.5, g.spacing);
  EXPECT_GE(b.radius, 1.0 / 32.0 - g.spacing);
  EXPECT_LE(b.radius, 1.0 / 16.0);
}

TEST(Whitney, CoverPropertiesOnRandomMasks) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto mask = random_mask(g, kCorpusSeed + s);
    const auto c = cover(g, mask, 0.25);
    const auto rep = verify_cover(c, g, mask);
    EXPECT_TRUE(all_pass(rep.checks));
    EXPECT_LE(rep.max_neighbors, 256u);
  }
}

TEST(Whitney, NeighborSetsMatchBruteForce) {
  const auto g = GridGeometry::cube(1, 2048, -1.0, 1.0);
  const auto mask = interval_mask(g, -0.9, 0.9);
  const auto c = cover(g, mask, 0.25);
  for (std::size_t i = 0; i < c.balls.size(); ++i) {
    std::vector<int> brute;
    for (std::size_t j = 0; j < c.balls.size(); ++j)
      if (distance(c.balls[i].center, c.balls[j].center, 1) < 0.75 * (c.balls[i].radius + c.balls[j].radius))
        brute.push_back(static_cast<int>(j));
    EXPECT_EQ(c.neighbors[i], brute) << i;
  }
  for (std::size_t i = 0; i < c.neighbors.size(); ++i)
    for (int j : c.neighbors[i]) {
      const auto& back = c.neighbors[j];
      EXPECT_NE(std::find(back.begin(), back.end(), static_cast<int>(i)), back.end());
    }
}

TEST(Whitney, SingleAndFarBalls) {
  const auto one = neighbor_sets({WhitneyBall{{0, 0, 0}, 0.1, 1.0}}, 2);
  EXPECT_EQ(one, (std::vector<std::vector<int>>{{0}}));
  const auto two = neighbor_sets({WhitneyBall{{0, 0, 0}, 0.1, 1.0}, WhitneyBall{{1, 0, 0}, 0.1, 1.0}}, 2);
  EXPECT_EQ(two, (std::vector<std::vector<int>>{{0}, {1}}));
}

TEST(Whitney, InflatedRadiusBreaksComparability) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  const auto mask = random_mask(g, kCorpusSeed);
  auto c = cover(g, mask, 0.25);
  c.balls[c.balls.size() / 2].radius *= 4.0;
  c.neighbors = neighbor_sets(c.balls, 2);
  bool w4 = true;
  for (const auto& chk : verify_cover(c, g, mask).checks)
    if (chk.name == "W4_radius_ratio") w4 = chk.pass;
  EXPECT_FALSE(w4);
}

TEST(Whitney, PartitionSumsToOne) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  const auto mask = random_mask(g, kCorpusSeed + 5);
  const auto c = cover(g, mask, 0.25);
  const PartitionOfUnity pu(c, g, mask, 2);
  const auto rep = verify_partition(pu, mask);
  EXPECT_TRUE(all_pass(rep.checks));
  EXPECT_LE(rep.sum_residual, 1e-10);
  EXPECT_NEAR(rep.derivative_constants[0], 1.0, 1e-12);
}

TEST(Whitney, ClosedFormDerivativesMatchJets) {
  const auto g = GridGeometry::cube(2, 128, -1.0, 1.0);
  const auto mask = random_mask(g, kCorpusSeed);
  const auto c = cover(g, mask, 0.25);
  const PartitionOfUnity pu(c, g, mask, 2);
  int compared = 0;
  for (std::size_t i = 0; i < c.balls.size(); i += 37) {
    const auto& b = c.balls[i];
    for (double t : {0.0, 0.55, 0.62, 0.7}) {
      const Point x{b.center[0] + t * b.radius * 0.8, b.center[1] + t * b.radius * 0.6, 0.0};
      const auto jet = pu.psi_jet_at(static_cast<int>(i), x);
      const auto norms = pu.derivative_norms_at(static_cast<int>(i), x);
      ASSERT_EQ(jet.has_value(), !norms.empty());
      if (!jet) continue;
      for (int l = 0; l <= 2; ++l)
        EXPECT_NEAR(norms[l], jet->derivative_norm(l), 1e-9 * (1.0 + norms[l]) / std::pow(b.radius, l));
      ++compared;
    }
  }
  EXPECT_GT(compared, 10);
}

TEST(Whitney, CoverIsDeterministic) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  const auto mask = random_mask(g, kCorpusSeed + 2);
  EXPECT_EQ(cover_json(cover(g, mask, 0.25)), cover_json(cover(g, mask, 0.25)));
}
