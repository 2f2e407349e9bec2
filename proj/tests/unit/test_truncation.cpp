#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dptk/corpus.hpp"
#include "dptk/truncation.hpp"

using namespace dptk;

namespace {

struct ModelData {
  ExponentConfig cfg = ExponentConfig::model(1, 2, 1.5, 1.55, 1.0);
  DerivedExponents d = derive_exponents(cfg);
  TruncationConfig t;
  GridGeometry g = GridGeometry::cube(1, 256, -1.0, 1.0);
  GridFunction u, a;
  TruncationFields fields;

  ModelData()
      : u(sample(g, [f = fourier_corpus(1, 1, kCorpusSeed)[0].f](const Point& x) { return 0.3 * f(x); })),
        a(sample(g, [](const Point& x) { return std::abs(x[0]); })),
        fields(assemble_fields(u, a, cfg, d, outer_cutoff(g, t))) {}
};

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

}  // namespace

TEST(Truncation, LambdaFloorArithmetic) {
  const auto g2 = GridGeometry::cube(2, 32, -1.0, 1.0);
  EXPECT_DOUBLE_EQ(lambda_floor(sample(g2, [](const Point&) { return 0.0; }), 0.9, {}, 0.25), 36.0);
  EXPECT_NEAR(lambda_floor(sample(g2, [](const Point&) { return 1.0; }), 0.9, {}, 0.25), 72.0, 1e-12);
  const auto g1 = GridGeometry::cube(1, 32, -1.0, 1.0);
  EXPECT_NEAR(lambda_floor(sample(g1, [](const Point&) { return 2.0; }), 0.8, {}, 0.25), 18.0, 1e-12);
}

TEST(Truncation, OuterCutoffShape) {
  const auto g = GridGeometry::cube(1, 256, -1.0, 1.0);
  TruncationConfig t;
  const auto psi = outer_cutoff(g, t);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::abs(g.center(i)[0]);
    if (x < 2.0 * t.R) EXPECT_EQ(psi(i), 1.0);
    if (x > 3.0 * t.R) EXPECT_EQ(psi(i), 0.0);
    EXPECT_GE(psi(i), 0.0);
    EXPECT_LE(psi(i), 1.0);
  }
}

TEST(Truncation, SmallnessRadiusCoversTheChosenBall) {
  ModelData s;
  const double R0 = smallness_radius(s.u, s.cfg, s.d);
  EXPECT_GT(R0, s.t.R);
  EXPECT_LE(R0, 0.5);
}

TEST(Truncation, GoodSetUntouchedBelowTheFloor) {
  ModelData s;
  double lo = s.fields.G(0);
  for (double v : s.fields.G.values()) lo = std::min(lo, v);
  // G is nearly flat, so take the midpoint to get both sets nonempty.
  const double lambda = 0.5 * (lo + max_value(s.fields.G));
  const auto res = truncate(s.u, s.cfg, s.t, s.fields.G, lambda);
  ASSERT_FALSE(res.cover.balls.empty());
  EXPECT_TRUE(all_pass(res.checks));
  std::size_t good = 0;
  for (std::size_t i = 0; i < s.g.size(); ++i)
    if (res.good[i]) {
      ++good;
      EXPECT_TRUE(same_bits(res.v_lambda(i), res.v(i))) << i;
    }
  EXPECT_GT(good, 0u);
  EXPECT_TRUE(std::isfinite(oscillation_report(res, s.cfg)));
  EXPECT_TRUE(std::isfinite(admissibility_report(res, s.cfg).ratio));
}

TEST(Truncation, AboveSupNothingChanges) {
  ModelData s;
  const auto res = truncate(s.u, s.cfg, s.t, s.fields.G, max_value(s.fields.G));
  EXPECT_TRUE(res.cover.balls.empty());
  for (std::size_t i = 0; i < s.g.size(); ++i) EXPECT_TRUE(same_bits(res.v_lambda(i), res.v(i)));
}

TEST(Truncation, LevelSetExtremes) {
  ModelData s;
  const auto all = level_set(s.fields.G, max_value(s.fields.G));
  for (auto v : all.good) EXPECT_TRUE(v);
  double lo = s.fields.G(0);
  for (double v : s.fields.G.values()) lo = std::min(lo, v);
  const auto none = level_set(s.fields.G, 0.5 * lo);
  for (auto v : none.good) EXPECT_FALSE(v);
}

TEST(Truncation, SweepPassesAndRecordsRows) {
  ModelData s;
  const auto sw = lambda_sweep(s.u, s.a, s.cfg, s.d, s.t);
  EXPECT_TRUE(all_pass(sw.checks));
  ASSERT_EQ(sw.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(sw.rows[1].lambda, 2.0 * sw.lambda0);
  // Doubling lambda raises the Campanato right-hand side by 2^{1/p}.
  EXPECT_NEAR(sw.rows[2].campanato.ratio * std::pow(2.0, 1.0 / s.cfg.p), sw.rows[1].campanato.ratio,
              1e-9 * sw.rows[1].campanato.ratio);
}

TEST(Truncation, FieldsGrowWithTheData) {
  ModelData s;
  const auto big = assemble_fields(2.0 * s.u, s.a, s.cfg, s.d, outer_cutoff(s.g, s.t));
  for (std::size_t i = 0; i < s.g.size(); ++i) EXPECT_GE(big.G(i), s.fields.G(i));
}
