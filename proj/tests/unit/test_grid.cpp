#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "dptk/dpgrid_io.hpp"
#include "dptk/error.hpp"
#include "dptk/grid.hpp"
#include "dptk/multiindex.hpp"

using namespace dptk;

TEST(Grid, CellCentersAndIndexRoundTrip) {
  const auto g = GridGeometry::cube(2, 8, -1.0, 1.0);
  EXPECT_EQ(g.size(), 64u);
  EXPECT_DOUBLE_EQ(g.spacing, 0.25);
  const auto c = g.center(0);
  EXPECT_DOUBLE_EQ(c[0], -0.875);
  EXPECT_DOUBLE_EQ(c[1], -0.875);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.index(g.coords(i)), i);
}

TEST(Grid, CreateGridRejectsBadInput) {
  const int res[] = {1};
  EXPECT_THROW(create_grid(Region::box({0, 0, 0}, {1, 0, 0}), res, [](const Point&) { return 0.0; }), InputError);
  const int two[] = {4, 8};
  // Non-uniform spacing.
  EXPECT_THROW(create_grid(Region::box({0, 0, 0}, {1, 1, 0}), two, [](const Point&) { return 0.0; }), InputError);
  // Three cells on (-1.5, 1.5) put a center on the pole of 1/x.
  const int three[] = {3};
  EXPECT_THROW(create_grid(Region::box({-1.5, 0, 0}, {1.5, 0, 0}), three, [](const Point& x) { return 1.0 / x[0]; }),
               InputError);
}

TEST(Grid, ZeroSamplerGivesZeroField) {
  const int res[] = {8, 8};
  const auto u = create_grid(Region::box({0, 0, 0}, {1, 1, 0}), res, [](const Point&) { return 0.0; });
  for (double v : u.values()) EXPECT_EQ(v, 0.0);
}

TEST(Grid, LinearDerivativeIsExact) {
  const auto g = GridGeometry::cube(2, 16, -1.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return 3.0 * x[0] - 2.0 * x[1] + 0.5; });
  const auto dx = partial_derivative(u, MultiIndex{1, 0});
  const auto dy = partial_derivative(u, MultiIndex{0, 1});
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(dx(i), 3.0, 1e-12);
    EXPECT_NEAR(dy(i), -2.0, 1e-12);
  }
  const auto norm = derivative_norm(u, 1);
  EXPECT_NEAR(norm(g.size() / 2), std::sqrt(13.0), 1e-12);
}

TEST(Grid, SecondDerivativeConvergesQuadratically) {
  // x^2 has exact second differences, so use sin to see the O(h^2) error.
  auto err = [](int cells) {
    const auto g = GridGeometry::cube(1, cells, -1.0, 1.0);
    const auto u = sample(g, [](const Point& x) { return std::sin(2.0 * x[0]); });
    const auto d2 = partial_derivative(u, MultiIndex{2});
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.center(i)[0];
      if (std::abs(x) < 0.5) e = std::max(e, std::abs(d2(i) + 4.0 * std::sin(2.0 * x)));
    }
    return e;
  };
  EXPECT_NEAR(err(64) / err(128), 4.0, 0.6);

  const auto g = GridGeometry::cube(1, 64, -1.0, 1.0);
  const auto sq = sample(g, [](const Point& x) { return x[0] * x[0]; });
  const auto d2 = partial_derivative(sq, MultiIndex{2});
  EXPECT_NEAR(d2(32), 2.0, 1e-9);
}

TEST(Grid, UnitDiscAreaConverges) {
  auto area = [](int cells) {
    const auto g = GridGeometry::cube(2, cells, -1.5, 1.5);
    return integrate(sample(g, [](const Point&) { return 1.0; }), Region::ball({0, 0, 0}, 1.0))[0];
  };
  const double coarse = std::abs(area(64) - std::numbers::pi), fine = std::abs(area(192) - std::numbers::pi);
  EXPECT_LT(std::abs(area(128) - std::numbers::pi) / std::numbers::pi, 0.02);
  EXPECT_LT(fine, coarse);
}

TEST(Grid, WeightedAverageHalfLine) {
  const auto g = GridGeometry::cube(1, 256, -1.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return x[0]; });
  const auto eta = sample(g, [](const Point& x) { return x[0] > 0.0 ? 1.0 : 0.0; });
  EXPECT_NEAR(weighted_average(u, Region::box({-1, 0, 0}, {1, 0, 0}), eta)[0], 0.5, 1e-3);
}

TEST(Grid, PowerIntegralAndMeasure) {
  const auto g = GridGeometry::cube(1, 100, 0.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return x[0]; });
  EXPECT_NEAR(integrate(u, Region::whole(g), 2.0)[0], 1.0 / 3.0, 1e-4);
  EXPECT_NEAR(measure(g, Region::whole(g)), 1.0, 1e-12);
}

TEST(MultiIndex, Operations) {
  const MultiIndex a{2, 1}, b{1, 0};
  EXPECT_EQ(a.order(), 3);
  EXPECT_EQ(a.factorial(), 2);
  EXPECT_TRUE(dominates(a, b));
  EXPECT_FALSE(dominates(b, a));
  EXPECT_EQ(difference(a, b), (MultiIndex{1, 1}));
  EXPECT_THROW(difference(b, a), InputError);
  EXPECT_DOUBLE_EQ(falling_factorial(a, b), 2.0);
  EXPECT_DOUBLE_EQ(a.power({2.0, 3.0, 0.0}), 12.0);
  EXPECT_EQ(indices_of_order(2, 2).size(), 3u);
  EXPECT_EQ(indices_up_to(3, 2).size(), 10u);
  const auto up = indices_up_to(2, 2);
  for (std::size_t i = 1; i < up.size(); ++i) EXPECT_LE(up[i - 1].order(), up[i].order());
}

TEST(GridIO, DpgridRoundTripIsBitwise) {
  const auto g = GridGeometry::cube(2, 8, -1.0, 1.0);
  const auto u = sample(g, 2, [](const Point& x, std::span<double> out) {
    out[0] = std::sin(x[0]) / 3.0;
    out[1] = std::exp(x[1]);
  });
  std::stringstream ss;
  write_dpgrid(u, ss);
  const auto back = read_dpgrid(ss);
  ASSERT_EQ(back.geometry(), u.geometry());
  ASSERT_EQ(back.components(), 2);
  for (std::size_t i = 0; i < u.values().size(); ++i) EXPECT_EQ(back.values()[i], u.values()[i]);
}

TEST(GridIO, CsvRoundTrip) {
  const auto g = GridGeometry::cube(1, 16, 0.0, 1.0);
  const auto u = sample(g, [](const Point& x) { return x[0] * x[0]; });
  const auto path = std::filesystem::temp_directory_path() / "dptk_grid_test.csv";
  write_grid_csv(u, path);
  const auto back = read_grid(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.points(), u.points());
  for (std::size_t i = 0; i < u.points(); ++i) EXPECT_NEAR(back(i), u(i), 1e-15);
}

TEST(GridIO, TruncatedStreamIsRejected) {
  const auto g = GridGeometry::cube(1, 8, 0.0, 1.0);
  std::stringstream ss;
  write_dpgrid(sample(g, [](const Point&) { return 1.0; }), ss);
  std::string s = ss.str();
  s.resize(s.size() - 5);
  std::stringstream cut(s);
  EXPECT_THROW(read_dpgrid(cut), InputError);
}
