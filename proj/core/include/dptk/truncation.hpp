#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dptk/check.hpp"
#include "dptk/exponents.hpp"
#include "dptk/grid.hpp"
#include "dptk/meanpoly.hpp"
#include "dptk/whitney.hpp"

namespace dptk {

// Optional right-hand-side data. Missing fields are zero; g_{r,m} never
// enters the fields below, so the model system needs nothing here.
struct TruncationData {
  std::optional<GridFunction> f_p, f_q;
  // [phase][order]
  std::array<std::vector<std::optional<GridFunction>>, 2> g, h;
};

struct TruncationConfig {
  Point center{};
  double R = 0.25;
  // 0 selects (1 + d0)/2 + 0.9 (1 - (1 + d0)/2).
  double delta = 0.0;
};

double default_delta(double delta0);
double resolved_delta(const TruncationConfig& t, const DerivedExponents& d);

struct TruncationFields {
  GridFunction g, G, F0, F;
};

// `cutoff` plays the role of psi (1 on B_2R, 0 off B_3R); pass ones for the
// global version used by the ball scans.
TruncationFields assemble_fields(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                                 const DerivedExponents& d, const GridFunction& cutoff,
                                 const TruncationData& data = {});

// Outer cutoff psi for a truncation configuration.
GridFunction outer_cutoff(const GridGeometry& g, const TruncationConfig& t);

double lambda_floor(const GridFunction& G, double delta, const Point& center, double R);

// Largest radius (capped below 1/2) satisfying the smallness window for u.
double smallness_radius(const GridFunction& u, const ExponentConfig& cfg, const DerivedExponents& d);

struct LevelSet {
  std::vector<std::uint8_t> good;  // G <= lambda
  double lambda = 0.0;
  double boundary_fraction = 0.0;  // cells with an axis neighbour on the other side
};

LevelSet level_set(const GridFunction& G, double lambda);
// Picks lambda (1 + 2^-40 k), k = 0..8, whose boundary fraction shrinks best
// from the coarse to the fine grid.
double stable_level(const GridFunction& coarse, const GridFunction& fine, double lambda);

struct TruncationResult {
  TruncationConfig config;
  int m = 1;
  double lambda = 0.0;
  GridFunction v, v_lambda;
  std::vector<std::uint8_t> good;
  WhitneyCover cover;
  std::optional<PartitionOfUnity> partition;
  std::optional<MVPolynomial> global_poly;
  std::vector<MVPolynomial> local;
  // Derivatives of v (finite differences) and of v_lambda, |sigma| <= m.
  std::optional<DerivativeCache> dv;
  std::map<MultiIndex, GridFunction> dv_lambda;
  std::vector<Check> checks;
};

TruncationResult truncate(const GridFunction& u, const ExponentConfig& cfg, const TruncationConfig& t,
                          const GridFunction& G, double lambda);

struct DerivativeBoundRow {
  int order = 0;  // l
  int k = 0;
  double c1 = 0.0;
  double c2 = 0.0;
};
std::vector<DerivativeBoundRow> derivative_bounds_report(const TruncationResult& r, const GridFunction& a,
                                                         const ExponentConfig& cfg, const DerivedExponents& d);

// max over balls and l of avg_{3/4 B_i} |D^l v - D^l P_i| / (r_i^{m-l} lambda^{1/p}).
double oscillation_report(const TruncationResult& r, const ExponentConfig& cfg);

struct TransferReport {
  std::vector<double> per_order;  // max over i, j, k, sigma for each l
  double max_ratio = 0.0;
  std::size_t pairs = 0;
  std::size_t exact = 0;  // comparisons with T = 0 and zero difference
};
TransferReport polynomial_transfer_report(const TruncationResult& r);

struct CampanatoReport {
  double ratio = 0.0;  // sup LHS / (R^{m-l-1} lambda^{1/p})
  double lhs = 0.0;    // sup LHS
  std::size_t balls = 0;
};
CampanatoReport admissibility_report(const TruncationResult& r, const ExponentConfig& cfg);

struct SweepRow {
  double multiplier = 0.0;
  double lambda = 0.0;
  std::size_t balls = 0;
  double c1 = 0.0, c2 = 0.0, oscillation = 0.0, transfer = 0.0;
  CampanatoReport campanato;
};

struct TruncationSweep {
  double lambda0 = 0.0;
  double delta = 0.0;
  double R0 = 0.0;
  double good_set_ratio = 0.0;  // avg G^delta / avg (H_m^delta + F^delta) on B_3R
  std::vector<SweepRow> rows;
  std::vector<Check> checks;
};

// Full pipeline at lambda = multiplier * Lambda0 for each multiplier.
TruncationSweep lambda_sweep(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                             const DerivedExponents& d, const TruncationConfig& t,
                             const std::vector<double>& multipliers = {1.1, 2.0, 4.0},
                             const TruncationData& data = {});

}  // namespace dptk
