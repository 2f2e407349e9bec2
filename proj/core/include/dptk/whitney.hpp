#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dptk/check.hpp"
#include "dptk/grid.hpp"
#include "dptk/jet.hpp"
#include "dptk/meanpoly.hpp"

namespace dptk {

struct WhitneyBall {
  Point center{};
  double radius = 0.0;
  double distance = 0.0;  // to the complement, at the center
};

struct WhitneyCover {
  int n = 1;
  double max_radius = 0.0;
  std::vector<WhitneyBall> balls;
  // A_i: j with 3/4 B_i and 3/4 B_j intersecting (includes i).
  std::vector<std::vector<int>> neighbors;
};

// Euclidean distance from each cell center to the nearest cell center outside
// the mask; cells beyond the grid count as outside. Zero off the mask.
std::vector<double> distance_to_complement(const GridGeometry& g, std::span<const std::uint8_t> mask);

WhitneyCover cover(const GridGeometry& g, std::span<const std::uint8_t> open_mask, double max_radius);
std::vector<std::vector<int>> neighbor_sets(const std::vector<WhitneyBall>& balls, int n);

// Cells whose centers lie strictly inside B(x, r).
std::vector<std::size_t> cells_in_ball(const GridGeometry& g, const Point& x, double r);

// |B(0,a) cap B(d e_1, b)| in dimension n = 1, 2, 3.
double ball_intersection_volume(double a, double b, double d, int n);
double ball_volume(double r, int n);

struct CoverReport {
  std::vector<Check> checks;
  std::size_t max_neighbors = 0;
  double overlap_ratio = 0.0;  // max over j in A_i of max(|B_i|,|B_j|) / |B_i cap 3/4 B_j|
  double min_rho_ratio = 0.0;  // min rho / r_i over the inner-ball construction
};

CoverReport verify_cover(const WhitneyCover& c, const GridGeometry& g, std::span<const std::uint8_t> mask);

// Bump per ball (1 on the half ball, 0 off the three-quarter ball),
// normalized by the sum of all bumps.
class PartitionOfUnity {
 public:
  // Throws InputError if a mask cell is in no half ball.
  PartitionOfUnity(const WhitneyCover& c, const GridGeometry& g, std::span<const std::uint8_t> mask, int order);

  const WhitneyCover& cover() const { return cover_; }
  const GridGeometry& geometry() const { return g_; }
  int order() const { return order_; }

  // (ball, psi) for every ball whose 3/4-ball holds the cell.
  const std::vector<std::pair<int, double>>& at(std::size_t cell) const { return psi_[cell]; }
  // Cells of 3/4 B_i with weights psi_i.
  WeightedCells cells(int ball) const;

  double bump(int ball, const Point& x) const;
  Jet bump_jet(int ball, const Point& x) const;
  // Jets of psi_j at a cell center, for every j present there.
  std::vector<std::pair<int, Jet>> psi_jets(std::size_t cell) const;
  // Jet of psi_i at an arbitrary point, from the 3/4-balls of i and its neighbors.
  // Empty when x lies in no half ball of that family.
  std::optional<Jet> psi_jet_at(int ball, const Point& x) const;
  // |D^l psi_i(x)| for l = 0..order; closed form up to order two.
  std::vector<double> derivative_norms_at(int ball, const Point& x) const;

 private:
  WhitneyCover cover_;
  GridGeometry g_;
  int order_;
  std::vector<std::vector<std::pair<int, double>>> psi_;
  std::vector<std::vector<std::size_t>> ball_cells_;
};

struct PartitionReport {
  std::vector<Check> checks;
  double min_psi_on_half = 1.0;        // min psi_i over 1/2 B_i
  double sum_residual = 0.0;           // max |sum psi - 1| on the covered set
  std::vector<double> derivative_constants;  // sup |D^l psi_i| r_i^l, l = 0..order
  int lattice_points = 0;                    // per axis, per ball
};

// With derivatives off, only (P1) and (P3) are checked; (P2) sampling is the
// expensive part.
PartitionReport verify_partition(const PartitionOfUnity& pu, std::span<const std::uint8_t> mask,
                                 bool derivatives = true);

std::string cover_json(const WhitneyCover& c);

}  // namespace dptk
