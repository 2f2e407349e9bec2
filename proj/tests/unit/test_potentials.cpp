#include <gtest/gtest.h>

#include <cmath>

#include "dptk/corpus.hpp"
#include "dptk/error.hpp"
#include "dptk/potentials.hpp"

using namespace dptk;

TEST(Potentials, SelfCellIntegralOneDimensional) {
  // Closed form: 2 (h/2)^gamma / gamma.
  for (double gamma : {0.25, 0.5, 1.0}) {
    const double h = 0.1;
    EXPECT_NEAR(self_cell_integral(1, h, gamma), 2.0 * std::pow(h / 2.0, gamma) / gamma, 1e-14);
  }
}

TEST(Potentials, SelfCellIntegralTwoDimensionalScaling) {
  // |y|^{gamma - 2} on a square of side h scales like h^gamma.
  const double a = self_cell_integral(2, 0.1, 1.0), b = self_cell_integral(2, 0.2, 1.0);
  EXPECT_NEAR(b / a, 2.0, 1e-6);
}

TEST(Potentials, RieszOfOneAtTheOrigin) {
  // 2 int_0^1 y^{-1/2} dy = 4
  const auto g = GridGeometry::cube(1, 256, -1.0, 1.0);
  const auto one = sample(g, [](const Point&) { return 1.0; });
  const auto I = riesz_potential(one, 0.5, Region::ball({0, 0, 0}, 1.0));
  EXPECT_NEAR(0.5 * (I(127) + I(128)), 4.0, 0.04);
}

TEST(Potentials, RieszIsLinear) {
  const auto g = GridGeometry::cube(2, 24, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.9);
  const auto f = sample(g, bump_corpus(2, 1, kCorpusSeed)[0].f);
  const auto I1 = riesz_potential(f, 1.0, ball), I3 = riesz_potential(3.0 * f, 1.0, ball);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(I3(i), 3.0 * I1(i), 1e-12 * (1.0 + I3(i)));
}

TEST(Potentials, StrongTypeRatioBoundedOnBumps) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.9);
  for (const auto& c : bump_corpus(2, 5, kCorpusSeed)) {
    const auto rep = strong_type_report(sample(g, c.f), 1.5, 1.0, ball);
    EXPECT_TRUE(std::isfinite(rep.ratio));
    EXPECT_GT(rep.ratio, 0.0);
    EXPECT_GT(rep.data_norm, 0.0);
  }
}

TEST(Potentials, SobolevPoincareLinearIsHomogeneous) {
  const auto g = GridGeometry::cube(2, 48, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.5);
  const auto eta = sample(g, [](const Point&) { return 1.0; });
  const double mean = average(sample(g, [](const Point& x) { return x[0] + 0.5 * x[1]; }), ball)[0];
  const auto u = sample(g, [mean](const Point& x) { return x[0] + 0.5 * x[1] - mean; });
  const auto a = sample(g, [](const Point&) { return 1.0; });
  const auto one = sobolev_poincare_report(u, a, 2.0, 2.0, 0.5, ball, eta, 1, 2.0);
  const auto two = sobolev_poincare_report(2.0 * u, a, 2.0, 2.0, 0.5, ball, eta, 1, 2.0);
  EXPECT_TRUE(std::isfinite(one.ratio));
  EXPECT_GT(one.ratio, 0.0);
  EXPECT_NEAR(two.ratio, one.ratio, 1e-12 * one.ratio);
  // a = 1, p = q: the weighted term is the gradient norm itself.
  EXPECT_NEAR(one.rhs_weighted, std::sqrt(1.25), 1e-9);
}

TEST(Potentials, PointwiseRieszNeedsMeanFreeInput) {
  const auto g = GridGeometry::cube(2, 24, -1.0, 1.0);
  const auto ball = Region::ball({0, 0, 0}, 0.5);
  const auto eta = sample(g, [](const Point&) { return 1.0; });
  const auto off = sample(g, [](const Point& x) { return 1.0 + x[0]; });
  EXPECT_THROW(pointwise_riesz_bound_check(off, ball, eta), InputError);
}
