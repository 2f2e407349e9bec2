#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dptk/error.hpp"
#include "dptk/gehring.hpp"

using namespace dptk;

TEST(Gehring, ReferenceConstantsAreExact) {
  const auto c = gehring_constants(1, 1.0, 0.5, 0.5);
  EXPECT_EQ(c.d, 0.75);
  EXPECT_EQ(c.c1, 10.0);
  EXPECT_EQ(c.c_star, 1000.0);
  EXPECT_EQ(c.eps_max, 5e-4);
  EXPECT_TRUE(all_pass(c.checks));
}

TEST(Gehring, CStarMonotoneInEps0) {
  double prev = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double cs = gehring_constants(2, 3.0, 0.5, 0.05 * k).c_star;
    EXPECT_GT(cs, prev);
    prev = cs;
  }
}

TEST(Gehring, EpsMaxVanishesAsKappaGoesToOne) {
  double prev = 1.0;
  for (double gap : {1e-2, 1e-4, 1e-8}) {
    const auto c = gehring_constants(2, 2.0, 1.0 - gap, 0.5);
    EXPECT_LT(c.eps_max, prev);
    EXPECT_DOUBLE_EQ(c.eps_max, std::min((1.0 - c.kappa) / c.c_star, c.eps0));
    prev = c.eps_max;
  }
  EXPECT_THROW(gehring_constants(2, 2.0, 1.0, 0.5), InputError);
}

TEST(Gehring, IterationConstantClosedForms) {
  // sum x^i = 1/(1-x); sum (i+1)(i+2) x^i = 2/(1-x)^3
  EXPECT_NEAR(iteration_constant(0.5, 0.0), 2.0, 1e-12);
  EXPECT_NEAR(iteration_constant(0.5, 1.0), 16.0, 1e-12);
}

TEST(Gehring, IterationConstantMatchesBruteSum) {
  double brute = 0.0, power = 1.0;
  for (int i = 0; i < 1000000; ++i) {
    const double w = (i + 1.0) * (i + 2.0);
    brute += power * w * w;
    power *= 0.9;
    if (power == 0.0) break;
  }
  EXPECT_NEAR(iteration_constant(0.9, 2.0), brute, 1e-9 * brute);
}

TEST(Gehring, LayerCakeOnLinearData) {
  const auto g = GridGeometry::cube(1, 64, 0.0, 1.0);
  const auto h = sample(g, [](const Point& x) { return x[0]; });
  EXPECT_LE(layer_cake_check(h, 0.5, Region::whole(g)), 1e-6);
}

TEST(Gehring, IterationLemmaOnExtremalFamily) {
  const double R0 = 0.5, R1 = 1.0, tau = 0.5, C2 = 1.0, gamma = 1.0;
  std::vector<double> s, h;
  for (int i = 0; i <= 200; ++i) {
    const double r = R0 + (R1 - R0) * i / 201.0;
    s.push_back(r);
    h.push_back(C2 / std::pow(R1 - r, gamma) * 0.25);
  }
  const auto rep = iteration_lemma_check(s, h, tau, 0.0, C2, gamma);
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.value, rep.bound);
}

TEST(Gehring, ConstantDataPassesEverywhere) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  const auto f = sample(g, [](const Point&) { return 2.0; });
  const auto zero = sample(g, [](const Point&) { return 0.0; });
  const auto cert = gehring_constants(2, 1.0, 0.5, 0.5);
  const auto scan = gehring_verify(f, zero, cert, Region::ball({}, 1.0), 1e-3);
  EXPECT_FALSE(scan.balls.empty());
  EXPECT_DOUBLE_EQ(scan.premise_fraction, 1.0);
  EXPECT_EQ(scan.conclusion_failures, 0u);
}

TEST(Gehring, BallMeanOfConstant) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto f = sample(g, [](const Point&) { return 3.0; });
  for (double rho : {0.01, 0.1, 0.37}) EXPECT_NEAR(ball_mean(f, {0.1, -0.2, 0.0}, rho), 3.0, 1e-12);
}

TEST(Gehring, ExitRadiusGrowsAwayFromSpike) {
  // 1D spike of mass m: the mean over B(x, rho) is m / (2 rho) once the ball
  // reaches it, so the exit radius grows with the distance to the spike.
  const auto g = GridGeometry::cube(1, 2048, -1.0, 1.0);
  auto f = sample(g, [](const Point& x) { return std::abs(x[0]) < 0.02 ? 100.0 : 0.0; });
  const double lambda = 20.0;
  double prev = 0.0;
  for (double x : {0.0, 0.01, 0.015}) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ball_mean(f, {x, 0, 0}, mid) > lambda ? lo : hi) = mid;
    }
    EXPECT_GE(hi, prev);
    prev = hi;
  }
}
