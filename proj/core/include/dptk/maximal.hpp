#pragma once

#include <optional>
#include <vector>

#include "dptk/grid.hpp"
#include "dptk/ratio.hpp"

namespace dptk {

enum class MaximalMode { centered, uncentered };

struct MaximalSpec {
  double beta = 0.0;
  MaximalMode mode = MaximalMode::uncentered;
  // f is replaced by f * indicator(restriction) before every application.
  std::optional<Region> restriction;
  int iterations = 1;
};

// Radii in lattice units: 1..8, then j * 2^k for j in 4..7, up to the first
// radius reaching the lattice diameter. Closed under doubling below the cap.
std::vector<int> radius_family(const GridGeometry& g);

// sup over lattice-centered balls of r^beta times the average of |f|, where
// a ball counts the lattice points strictly inside it and f vanishes off the
// grid. Uncentered mode takes balls whose closure contains the point.
GridFunction maximal_function(const GridFunction& f, const MaximalSpec& spec);

// l-fold restricted uncentered maximal operator.
GridFunction iterated_maximal(const GridFunction& f, const Region& ball, int iterations);
// l-fold unrestricted uncentered maximal operator; l = 0 returns |f|.
GridFunction iterated_maximal(const GridFunction& f, int iterations);

// Reference constant for M(M_beta f) <= c M_beta f.
double composition_constant(int n, double beta);

struct CompositionReport {
  RatioStats ratio;
  double bound = 0.0;
  bool pass = false;
};
CompositionReport composition_report(const GridFunction& f, double beta);

struct ModulusRow {
  int shift = 0;  // lattice units
  double omega = 0.0;
};
// sup |M_beta f(x + d) - M_beta f(x)| over lattice shifts 0 < |d| <= shift,
// for shift in {1, 2, 4, 8}. Both points must lie in the region.
std::vector<ModulusRow> continuity_modulus_report(const GridFunction& f, double beta, const Region& region);

struct HedbergReport {
  RatioStats ratio;
  double residual = 0.0;  // largest weighted average of D^k u, k < order
  bool pass = false;
};
// sup_B |u| / (R^order M_B^{2 order}(|D^order u|)). Throws InputError if the
// eta-weighted averages of lower derivatives do not vanish.
HedbergReport hedberg_report(const GridFunction& u, int order, const Region& ball, const GridFunction& eta);

struct WeightedHedbergReport {
  RatioStats ratio;
  bool pass = false;
};
// sup_B a^{1/q} M_B^l(f) / (M_B^l(a^{1/q} f) + M_beta(M^{l-1}(f chi_B))).
WeightedHedbergReport weighted_hedberg_report(const GridFunction& f, const GridFunction& a, double q, double beta,
                                              int iterations, const Region& ball);

}  // namespace dptk
