#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dptk/corpus.hpp"
#include "dptk/maximal.hpp"

using namespace dptk;

namespace {

std::size_t nearest(const GridGeometry& g, double x) {
  return static_cast<std::size_t>(std::floor((x - g.origin[0]) / g.spacing));
}

}  // namespace

TEST(Maximal, IndicatorAtThreeIsOneHalf) {
  const auto g = GridGeometry::cube(1, 256, -4.0, 4.0);
  const auto f = sample(g, [](const Point& x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });
  const auto m = maximal_function(f, {});
  const std::size_t i = nearest(g, 3.0);
  EXPECT_NEAR(m(i), 0.5, 2.0 * g.spacing);
}

TEST(Maximal, ConstantIsAFixedPointAwayFromTheEdge) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto one = sample(g, [](const Point&) { return 1.0; });
  MaximalSpec centered;
  centered.mode = MaximalMode::centered;
  const auto m = maximal_function(one, centered);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(m(i), 1.0, 1e-12);
}

TEST(Maximal, SandwichOnCorpus) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  MaximalSpec centered;
  centered.mode = MaximalMode::centered;
  for (const auto& c : bump_corpus(2, 5, kCorpusSeed)) {
    const auto f = sample(g, c.f);
    const auto mc = maximal_function(f, centered);
    const auto mu = maximal_function(f, {});
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_LE(mc(i), mu(i) * (1.0 + 1e-12));
      EXPECT_LE(mu(i), 4.0 * mc(i) * (1.0 + 2.0 * g.spacing));
    }
  }
}

TEST(Maximal, IterationIsMonotoneOnTheBall) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.8);
  const auto f = sample(g, bump_corpus(2, 1, kCorpusSeed)[0].f);
  const auto m1 = iterated_maximal(f, ball, 1);
  const auto m2 = iterated_maximal(f, ball, 2);
  for (std::size_t i : ball.indices(g)) EXPECT_GE(m2(i), m1(i) * (1.0 - 1e-12));
}

TEST(Maximal, ZeroIterationsIsAbsoluteValue) {
  const auto g = GridGeometry::cube(1, 32, -1.0, 1.0);
  const auto f = sample(g, [](const Point& x) { return std::sin(5.0 * x[0]); });
  const auto m0 = iterated_maximal(f, 0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(m0(i), std::abs(f(i)));
}

TEST(Maximal, RadiusFamilyClosedUnderDoubling) {
  const auto g = GridGeometry::cube(2, 128, -1.0, 1.0);
  const auto radii = radius_family(g);
  ASSERT_FALSE(radii.empty());
  EXPECT_EQ(radii.front(), 1);
  for (int r : radii)
    if (2 * r <= radii.back()) EXPECT_NE(std::find(radii.begin(), radii.end(), 2 * r), radii.end()) << r;
}

TEST(Maximal, CompositionBoundHoldsOnBumps) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  for (const auto& c : bump_corpus(2, 4, kCorpusSeed)) {
    const auto rep = composition_report(sample(g, c.f), 0.5);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.ratio.sup, rep.bound);
  }
  EXPECT_GT(composition_constant(2, 0.5), composition_constant(2, 1.0));
}

TEST(Maximal, ModulusNegativeControl) {
  const auto g = GridGeometry::cube(1, 128, -1.0, 1.0);
  const auto smooth = sample(g, [](const Point& x) { return std::exp(-8.0 * x[0] * x[0]); });
  const auto jump = sample(g, [](const Point& x) { return x[0] > 0.1 ? 1.0 : 0.0; });
  const auto inner = Region::box({-0.5, 0, 0}, {0.5, 0, 0});
  const auto ms = continuity_modulus_report(smooth, 0.0, inner);
  const auto mj = continuity_modulus_report(jump, 0.0, inner);
  ASSERT_FALSE(ms.empty());
  EXPECT_LT(ms.front().omega, 0.1);
  EXPECT_GT(mj.front().omega, 0.1 * mj.back().omega);
}

TEST(Maximal, HedbergLinearIsHomogeneous) {
  const auto g = GridGeometry::cube(1, 128, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.5);
  const auto eta = sample(g, [](const Point&) { return 1.0; });
  const double mean = average(sample(g, [](const Point& x) { return x[0]; }), ball)[0];
  const auto u = sample(g, [mean](const Point& x) { return x[0] - mean; });
  const auto one = hedberg_report(u, 1, ball, eta);
  const auto two = hedberg_report(2.0 * u, 1, ball, eta);
  EXPECT_TRUE(one.pass);
  EXPECT_NEAR(two.ratio.sup, one.ratio.sup, 1e-12 * one.ratio.sup);
}
