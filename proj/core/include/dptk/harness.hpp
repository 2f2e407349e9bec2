#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dptk/check.hpp"
#include "dptk/exponents.hpp"
#include "dptk/gehring.hpp"
#include "dptk/grid.hpp"
#include "dptk/meanpoly.hpp"
#include "dptk/truncation.hpp"

namespace dptk {

// sum over cells and |sigma| = m of (|D^m u|^{p-2} + a |D^m u|^{q-2}) d_sigma u . d_sigma phi,
// times the cell volume. phi must vanish within max(2, m+1) cells of the boundary.
double model_residual(const GridFunction& u, const GridFunction& a, double p, double q, int m,
                      const GridFunction& phi);

struct StructureReport {
  std::vector<Check> checks;
  double coercivity_min = 0.0;  // min of nu^{-1} A.xi / (|xi|^p + a|xi|^q)
  double growth_max = 0.0;      // max of |A| / (|xi|^{p-1} + a|xi|^{q-1})
};
StructureReport structure_checks(const GridFunction& a, double p, double q, double nu, int components,
                                 std::uint64_t seed, int samples = 10000);

// max{p^/p, q^/q} from the three-way split on the Sobolev conjugates.
double delta_hat(const ExponentConfig& cfg);

struct ScanInputs {
  ExponentConfig cfg;
  DerivedExponents derived;
  double delta = 0.0;
  double delta_hat = 0.0;
  GridFunction u, a;
  GridFunction Hm;  // |D^m u|^p + a |D^m u|^q
  GridFunction F;   // global version (cutoff replaced by the domain indicator)
  std::optional<DerivativeCache> du;
};

ScanInputs prepare_scan(const GridFunction& u, const GridFunction& a, const ExponentConfig& cfg,
                        const DerivedExponents& d, double delta = 0.0, const TruncationData& data = {});

struct ScanOptions {
  std::optional<Region> omega;  // default: whole grid
  double R0 = 0.25;
  int stride = 8;
  double min_radius_cells = 2.0;
};

struct ScanRecord {
  Point center{};
  double R = 0.0;
  double lhs = 0.0;    // avg_R H^delta
  double tail = 0.0;   // 1/2 avg_3R H^delta
  double poly = 0.0;   // sum_l avg_2R H((D^l u - D^l P)/R^{m-l})^delta
  double data = 0.0;   // avg_3R F^delta
  double power = 0.0;  // (avg_3R H^dhat)^{delta/dhat}
  double implied = 0.0;
  double poincare = 0.0;  // sum_l avg_2R H(...) / (avg_2R H^dhat)^{1/dhat}
};

struct ScanReport {
  std::string name;
  std::vector<ScanRecord> balls;
  double constant = 0.0;
  double poincare_constant = 0.0;
  std::vector<Check> checks;
};

ScanReport caccioppoli_scan(const ScanInputs& in, const ScanOptions& opt = {});
ScanReport reverse_holder_scan(const ScanInputs& in, const ScanOptions& opt = {});

struct SelfImproveReport {
  ScanReport reverse_holder;
  GehringCertificate certificate;
  GehringScan gehring;
  double kappa = 0.0;
  double eps0 = 0.0;
  bool corollary_mode = false;
  double improved_exponent = 0.0;  // delta (1 + eps_max), integrability of H_m
  std::string failed_stage;
  std::vector<Check> checks;
};

SelfImproveReport self_improve(const ScanInputs& in, const ScanOptions& opt = {},
                               std::optional<double> kappa_override = std::nullopt);

}  // namespace dptk
