#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dptk/corpus.hpp"
#include "dptk/cutoff.hpp"
#include "dptk/meanpoly.hpp"

using namespace dptk;

namespace {

GridFunction ones(const GridGeometry& g) {
  return sample(g, [](const Point&) { return 1.0; });
}

}  // namespace

TEST(MeanPoly, SquareOnIntervalIsOneThird) {
  const auto g = GridGeometry::cube(1, 1024, -1.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return x[0] * x[0]; });
  const auto P = fit(u, Region::box({-1, 0, 0}, {1, 0, 0}), ones(g), 2, {});
  EXPECT_NEAR(P.coefficient(MultiIndex{0}), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(P.coefficient(MultiIndex{1}), 0.0, 1e-12);
}

TEST(MeanPoly, OrderOneIsTheMean) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto ball = Region::ball({0.1, 0, 0}, 0.6);
  const auto u = sample(g, fourier_corpus(2, 1, kCorpusSeed)[0].f);
  const auto P = fit(u, ball, ones(g), 1, {0.1, 0, 0});
  EXPECT_NEAR(P.coefficient(MultiIndex{0, 0}), average(u, ball)[0], 1e-13);
}

TEST(MeanPoly, MomentResidualSmallOnCorpus) {
  for (int n = 1; n <= 2; ++n) {
    const auto g = GridGeometry::cube(n, n == 1 ? 256 : 48, -1.0, 1.0);
    const auto ball = Region::ball({}, 0.7);
    const auto eta = sample_cutoff(g, {}, 0.3, 0.7);
    for (const auto& c : fourier_corpus(n, 5, kCorpusSeed))
      for (int m = 1; m <= 3; ++m) {
        const auto u = sample(g, c.f);
        const auto P = fit(u, ball, eta, m, {});
        EXPECT_LE(moment_residual(u, P, ball, eta), 1e-8) << c.name << " m=" << m;
      }
  }
}

TEST(MeanPoly, FittingAPolynomialReturnsIt) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto ball = Region::ball({}, 0.8);
  MVPolynomial p(2, 2, {});
  for (const auto& s : p.indices()) p.set_coefficient(s, coef(rng));
  const auto P = fit(p.sample(g), ball, ones(g), 3, {});
  for (const auto& s : p.indices()) EXPECT_NEAR(P.coefficient(s), p.coefficient(s), 1e-12) << s.to_string();
}

TEST(MeanPoly, DifferentiateAndRecenter) {
  MVPolynomial p(2, 3, {});
  p.set_coefficient(MultiIndex{2, 1}, 1.0);  // x^2 y
  const auto dx = p.differentiate(MultiIndex{1, 0});
  EXPECT_DOUBLE_EQ(dx.evaluate({2.0, 3.0, 0.0}), 12.0);
  EXPECT_DOUBLE_EQ(p.differentiate(MultiIndex{3, 1}).evaluate({1.0, 1.0, 0.0}), 0.0);
  const auto q = p.recenter({0.5, -0.25, 0.0});
  for (double x : {-1.0, 0.3, 2.0})
    for (double y : {-0.7, 0.0, 1.1}) EXPECT_NEAR(q.evaluate({x, y, 0.0}), x * x * y, 1e-13);
}

TEST(MeanPoly, DerivativeNormOfQuadratic) {
  MVPolynomial p(2, 2, {});
  p.set_coefficient(MultiIndex{2, 0}, 1.0);
  p.set_coefficient(MultiIndex{0, 2}, 1.0);
  EXPECT_NEAR(derivative_norm(p, 1, {3.0, 4.0, 0.0}), 10.0, 1e-12);
  EXPECT_NEAR(derivative_norm(p, 2, {3.0, 4.0, 0.0}), std::sqrt(8.0), 1e-12);
}

TEST(MeanPoly, IntegrationByPartsSquare) {
  // m = 3 on x^2: |D^2 P| against the mean of |D^2 u| = 2.
  const auto g = GridGeometry::cube(1, 512, -1.0, 1.0);
  const auto ball = Region::ball({}, 0.8);
  const auto eta = sample_cutoff(g, {}, 0.4, 0.8);
  const auto u = sample(g, [](const Point& x) { return x[0] * x[0]; });
  const auto P = fit(u, ball, eta, 3, {});
  const auto rep = integration_by_parts_report(P, u, ball, eta);
  ASSERT_EQ(rep.ratios.size(), 3u);
  EXPECT_NEAR(rep.ratios[2].ratio.sup, 1.0, 1e-6);
}

TEST(MeanPoly, KernelBoundIsHomogeneous) {
  const auto g = GridGeometry::cube(1, 256, -1.0, 1.0);
  const auto ball = Region::ball({}, 0.6);
  const auto eta = sample_cutoff(g, {}, 0.3, 0.6);
  const auto u = sample(g, fourier_corpus(1, 1, kCorpusSeed)[0].f);
  const auto a = kernel_bound_report(u, ball, eta, 2, 1);
  const auto b = kernel_bound_report(5.0 * u, ball, eta, 2, 1);
  EXPECT_TRUE(a.acceptable());
  EXPECT_NEAR(b.sup, a.sup, 1e-10 * a.sup);
}
