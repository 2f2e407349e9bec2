#include <gtest/gtest.h>

#include "json.hpp"

#include <cmath>

#include "dptk/cutoff.hpp"
#include "dptk/error.hpp"
#include "dptk/harness.hpp"
#include "dptk/report.hpp"
#include "dptk/suites.hpp"

using namespace dptk;

namespace {

GridFunction zeros(const GridGeometry& g) {
  return sample(g, [](const Point&) { return 0.0; });
}

}  // namespace

TEST(Harness, HarmonicFunctionHasSmallResidual) {
  const auto g = GridGeometry::cube(2, 64, -1.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return x[0] * x[0] - x[1] * x[1]; });
  const auto phi = sample_cutoff(g, {}, 0.3, 0.6);
  const double r = model_residual(u, zeros(g), 2.0, 2.0, 1, phi);
  EXPECT_LT(std::abs(r), 1e-10);
}

TEST(Harness, KinkIsNotAWeakSolution) {
  const auto g = GridGeometry::cube(1, 256, -1.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return std::abs(x[0]); });
  const auto phi = sample_cutoff(g, {}, 0.2, 0.5);
  // -2 phi(0) in the limit
  EXPECT_NEAR(model_residual(u, zeros(g), 2.0, 2.0, 1, phi), -2.0, 0.05);
}

TEST(Harness, StructureChecksPass) {
  const auto g = GridGeometry::cube(2, 32, -1.0, 1.0);
  const auto a = sample(g, [](const Point& x) { return std::abs(x[0]); });
  const auto rep = structure_checks(a, 1.5, 1.8, 1.0, 3, kCorpusSeed, 2000);
  EXPECT_TRUE(all_pass(rep.checks));
  EXPECT_GT(rep.coercivity_min, 0.0);
  EXPECT_TRUE(std::isfinite(rep.growth_max));
}

TEST(Harness, ReportPrefixAndJson) {
  Report r;
  r.suite = "demo";
  r.add({at_most("x", 1.0, 2.0)}, "block");
  r.add({positive("y", -1.0)});
  r.constant("c", 0.1);
  r.echo("grid", std::string("32"));
  EXPECT_EQ(r.checks[0].name, "block.x");
  EXPECT_EQ(r.checks[1].name, "y");
  EXPECT_FALSE(r.passed());

  const auto j = nlohmann::json::parse(report_json(std::vector<Report>{r}));
  EXPECT_EQ(j["status"], "fail");
  const auto& rep = j["reports"][0];
  EXPECT_EQ(rep["suite"], "demo");
  EXPECT_EQ(rep["checks"][0]["status"], "pass");
  EXPECT_EQ(rep["checks"][1]["status"], "fail");
  EXPECT_EQ(rep["constants"]["c"], 0.1);
  EXPECT_EQ(rep["config_echo"]["grid"], "32");
}

TEST(Harness, SuiteRunsAreDeterministic) {
  SuiteOptions opt;
  opt.grid_size = 32;
  const auto a = report_json(run_suite("exponents", opt));
  const auto b = report_json(run_suite("exponents", opt));
  EXPECT_EQ(a, b);
  EXPECT_EQ(nlohmann::json::parse(a)["status"], "pass");
}

TEST(Harness, UnknownSuiteThrows) { EXPECT_THROW(run_suite("nope"), InputError); }

TEST(Harness, SuiteListIsStable) {
  const auto& names = suite_names();
  ASSERT_FALSE(names.empty());
  EXPECT_EQ(names.front(), "grid");
}
