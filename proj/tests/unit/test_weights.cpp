#include <gtest/gtest.h>

#include <cmath>

#include "dptk/error.hpp"
#include "dptk/exponents.hpp"
#include "dptk/weights.hpp"

using namespace dptk;

namespace {

GridFunction power_weight(const GridGeometry& g, double alpha) {
  return sample(g, [alpha](const Point& x) { return std::pow(std::hypot(x[0], x[1]), alpha); });
}

}  // namespace

TEST(Weights, PowerWeightSeminormAtMostOne) {
  const auto g = GridGeometry::cube(2, 24, -1.0, 1.0);
  for (double alpha : {0.25, 0.5, 1.0}) {
    const auto est = estimate_seminorm(power_weight(g, alpha), alpha, Region::whole(g));
    EXPECT_LE(est.value, 1.0 + 1e-6) << alpha;
    EXPECT_FALSE(est.diverging);
  }
}

TEST(Weights, StepWeightDivergesAndCannotBeRegularized) {
  const auto g = GridGeometry::cube(1, 128, -1.0, 1.0);
  const auto step = sample(g, [](const Point& x) { return x[0] > 0.0 ? 1.0 : 0.0; });
  EXPECT_TRUE(estimate_seminorm(step, 0.5, Region::whole(g)).diverging);
  EXPECT_THROW(regularize(step, 0.5), InputError);
  EXPECT_NO_THROW(regularize(step, 0.5, false));
}

TEST(Weights, RegularizeMatchesBruteForceMinimum) {
  const auto g = GridGeometry::cube(2, 20, -1.0, 1.0);
  const double alpha = 0.6;
  const auto a = sample(g, [](const Point& x) { return 0.3 + std::sin(3.0 * x[0]) * std::sin(3.0 * x[0]) * x[1] * x[1]; });
  const auto reg = regularize(a, alpha);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double best = a(i);
    for (std::size_t j = 0; j < g.size(); ++j)
      best = std::min(best, a(j) + std::pow(distance(g.center(i), g.center(j), 2), alpha));
    EXPECT_NEAR(reg(i), best, 1e-10);
    EXPECT_LE(reg(i), a(i));
  }
}

TEST(Weights, RegularizedPowerWeightIsAFixedPoint) {
  const auto g = GridGeometry::cube(2, 24, -1.0, 1.0);
  const auto a = regularize(power_weight(g, 0.5), 0.5);
  const auto twice = regularize(a, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(twice(i), a(i), 1e-12);
}

TEST(Weights, NegativeWeightRejected) {
  const auto g = GridGeometry::cube(1, 16, -1.0, 1.0);
  const auto a = sample(g, [](const Point& x) { return x[0]; });
  EXPECT_THROW(regularize(a, 0.5), InputError);
}

TEST(Weights, DoublePhaseExplicit) {
  EXPECT_DOUBLE_EQ(double_phase(0.0, 2.0, 2.0, 3.0), 4.0);
  EXPECT_DOUBLE_EQ(double_phase(0.5, 2.0, 2.0, 3.0), 8.0);
  EXPECT_DOUBLE_EQ(double_phase(4.0, 1.0, 2.0, 3.0, 0.5), 3.0);
}

TEST(Weights, DoublePhaseTopOrderUsesPhaseExponents) {
  const auto cfg = ExponentConfig::model(2, 1, 2.0, 2.2, 0.5);
  const auto d = derive_exponents(cfg);
  EXPECT_NEAR(double_phase(0.7, 1.3, cfg, d, 1), std::pow(1.3, 2.0) + 0.7 * std::pow(1.3, 2.2), 1e-14);
}

TEST(Weights, MakeWeightRecordsSeminorm) {
  const auto g = GridGeometry::cube(2, 16, -1.0, 1.0);
  const auto w = make_weight(power_weight(g, 0.5), 0.5);
  EXPECT_GE(w.seminorm, 1.0);
  EXPECT_LE(w.seminorm, 1.0 + 1e-6);
}
