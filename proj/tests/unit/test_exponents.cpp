#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dptk/error.hpp"
#include "dptk/exponents.hpp"

using namespace dptk;

TEST(Exponents, HolderConjugate) {
  EXPECT_EQ(holder_conjugate(1.0), kInfinity);
  EXPECT_EQ(holder_conjugate(2.0), 2.0);
  EXPECT_DOUBLE_EQ(holder_conjugate(4.0), 4.0 / 3.0);
  EXPECT_EQ(holder_conjugate(kInfinity), 1.0);
  EXPECT_THROW(holder_conjugate(0.5), InputError);
}

TEST(Exponents, HolderConjugateIsAnInvolution) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(1.01, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = t(rng);
    EXPECT_NEAR(holder_conjugate(holder_conjugate(x)), x, 1e-12 * x);
  }
}

TEST(Exponents, SobolevExponent) {
  EXPECT_DOUBLE_EQ(sobolev_exponent(2.0, 1, 4), 4.0);
  EXPECT_EQ(sobolev_exponent(3.0, 1, 3), kInfinity);
  EXPECT_EQ(sobolev_exponent(1.5, 2, 3), kInfinity);
  EXPECT_DOUBLE_EQ(sobolev_exponent(2.0, 0, 3), 2.0);
}

TEST(Exponents, SobolevExponentMonotoneOnFiniteBranch) {
  for (int n = 2; n <= 3; ++n)
    for (double t = 1.0; t < 3.0; t += 0.05) {
      const double a = sobolev_exponent(t, 1, n), b = sobolev_exponent(t + 0.05, 1, n);
      if (std::isfinite(b)) EXPECT_LE(a, b);
    }
}

TEST(Exponents, DefaultModelValidates) {
  const auto cfg = ExponentConfig::model(2, 1, 2.0, 2.2, 0.5);
  EXPECT_TRUE(all_pass(validate(cfg)));
}

TEST(Exponents, BorderlineRatioFailsWithZeroSlack) {
  // q/p = 1 + alpha/n exactly.
  const auto cfg = ExponentConfig::model(2, 1, 2.0, 3.0, 1.0);
  const auto checks = validate(cfg);
  EXPECT_FALSE(all_pass(checks));
  bool found = false;
  for (const auto& c : checks)
    if (!c.pass) {
      EXPECT_NEAR(c.measured, 0.0, 1e-15) << c.name;
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Exponents, TopOrderGammaIsThePhaseExponent) {
  const auto cfg = ExponentConfig::model(2, 1, 2.0, 2.2, 0.5);
  const auto d = derive_exponents(cfg);
  EXPECT_EQ(d.gamma[kP][1], 2.0);
  EXPECT_EQ(d.gamma[kQ][1], 2.2);
  EXPECT_EQ(d.t_hat[kP][1], 2.0);
  EXPECT_EQ(d.s_hat[kP][1], kInfinity);
  EXPECT_NEAR(d.t_hat[kQ][1], holder_conjugate(2.2), 1e-15);
}

TEST(Exponents, ModelGammaInsideSobolevWindow) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto cfg = ExponentConfig::model(2, 1, p, p * 1.1, 0.5);
    const auto d = derive_exponents(cfg);
    for (int r : {kP, kQ}) {
      const double e = cfg.exponent(r);
      EXPECT_GT(d.gamma[r][0], e);
      EXPECT_LT(d.gamma[r][0], sobolev_exponent(e, 1, 2));
    }
    EXPECT_LE(d.gamma[kP][0], d.gamma[kQ][0]);
  }
}

TEST(Exponents, DerivedRevalidatesWithPositiveSlack) {
  const auto cfg = ExponentConfig::model(2, 2, 2.0, 2.2, 0.5);
  const auto d = derive_exponents(cfg);
  EXPECT_TRUE(all_pass(validate_derived(cfg, d)));
  EXPECT_GT(d.delta0, 1.0 / cfg.p);
  EXPECT_LT(d.delta0, 1.0);
  for (double b : d.beta) EXPECT_GT(b, 0.0);
}

TEST(Exponents, SelectionIsDeterministic) {
  const auto cfg = ExponentConfig::model(3, 2, 1.8, 2.0, 0.7);
  EXPECT_EQ(derived_exponents_json(cfg, derive_exponents(cfg)), derived_exponents_json(cfg, derive_exponents(cfg)));
}

TEST(Exponents, DataExponentAtLowerBoundIsInfeasible) {
  auto cfg = ExponentConfig::model(2, 1, 2.0, 2.2, 0.5);
  // Pull s_{p,0} down to where the gamma interval closes.
  cfg.s[kP][0] = 1.0;
  EXPECT_THROW(derive_exponents(cfg), InputError);
}

TEST(Exponents, RieszGapExamples) {
  const auto same = riesz_gap(2.0, 2.0, 3, 0.5);
  EXPECT_EQ(same.beta, 1.0);
  const auto six = riesz_gap(2.0, 3.0, 6, 0.5);
  EXPECT_DOUBLE_EQ(six.beta, 2.0);
  EXPECT_LT(six.sobolev_residual, 1e-15);
  EXPECT_TRUE(six.in_range);
  EXPECT_THROW(riesz_gap(2.0, 3.0, 3, 0.5), InputError);
}

TEST(Exponents, RieszIdentitiesOnRandomTuples) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<int> dim(2, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const int n = dim(rng);
    const double p = 1.0 + u(rng) * (n - 1.2);
    const double q = p + u(rng) * (n - 0.05 - p);
    const double alpha = u(rng);
    const auto rg = riesz_gap(p, q, n, alpha);
    EXPECT_LE(rg.sobolev_residual, 1e-14);
    EXPECT_LE(rg.scaling_residual, 1e-14);
    EXPECT_TRUE(rg.in_range);
  }
}

TEST(Exponents, ConfigJsonRoundTrip) {
  auto cfg = ExponentConfig::model(2, 1, 2.0, 2.2, 0.5);
  cfg.s[kP][0] = 7.5;
  const auto back = parse_exponent_config(exponent_config_json(cfg));
  EXPECT_EQ(exponent_config_json(back), exponent_config_json(cfg));
  EXPECT_THROW(parse_exponent_config("{\"n\": 2, \"p\": \"two\"}"), InputError);
}

TEST(Exponents, ValidateNeverThrows) {
  ExponentConfig cfg;
  cfg.p = 0.5;
  cfg.q = 0.1;
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_FALSE(all_pass(validate(cfg)));
}
