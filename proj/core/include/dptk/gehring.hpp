#pragma once

#include <vector>

#include "dptk/check.hpp"
#include "dptk/grid.hpp"

namespace dptk {

struct GehringCertificate {
  int n = 1;
  double A = 0.0;
  double kappa = 0.0;
  double eps0 = 0.0;
  double theta_rh = 0.0;
  // A / (1 - theta_rh): the tail term theta avg_{3R} f is absorbed on balls
  // with avg_{3R} f <= avg_R f.
  double A_eff = 0.0;
  double d = 0.0;
  double theta = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c_star = 0.0;
  double eps_max = 0.0;
  std::vector<Check> checks;
};

GehringCertificate gehring_constants(int n, double A, double kappa, double eps0, double theta_rh = 0.0);

// sum_i tau^i ((i+1)(i+2))^gamma, truncated once the tail bound drops below 1e-12.
double iteration_constant(double tau, double gamma);

struct ConclusionConstants {
  double c_hat = 0.0;  // iteration_constant(1/2, n eps)
  double C1 = 0.0;     // multiplies avg_{3R} f
  double C2 = 0.0;     // multiplies (avg_{3R} g^{1+eps})^{1/(1+eps)}
};
ConclusionConstants conclusion_constants(const GehringCertificate& cert, double eps);

// max relative error between h^r and its layer-cake integral over cells of B
// (cells with h > 0 only when r < 0).
double layer_cake_check(const GridFunction& h, double r, const Region& region, int nodes = 10000);

struct IterationLemmaReport {
  std::size_t premise_violations = 0;
  double bound = 0.0;  // C1/(1-tau) + c C2 / (R1-R0)^gamma
  double value = 0.0;  // h(R0)
  bool conclusion_asserted = false;
  bool pass = false;
};
// h sampled at increasing radii s[0] = R0 < ... < s.back() = R1.
IterationLemmaReport iteration_lemma_check(const std::vector<double>& s, const std::vector<double>& h, double tau,
                                           double C1, double C2, double gamma);

struct GehringScanConfig {
  double R0 = 0.25;
  int stride = 8;
  double min_radius_cells = 2.0;
  // Only balls with avg_{3R} f <= avg_R f carry the premise.
  bool conditional = false;
};

struct BallPairRecord {
  Point center{};
  double R = 0.0;
  double mean_R = 0.0;       // avg_R f1
  double power_mean = 0.0;   // (avg_{3R} f1^kappa)^{1/kappa}
  double mean_3R = 0.0;      // avg_{3R} f1
  double data_mean = 0.0;    // avg_{3R} f2
  double implied_A = 0.0;
  bool premise_applies = true;
  bool premise = false;
  double improved = 0.0;     // (avg_R f1^{1+eps})^{1/(1+eps)}
  double conclusion_rhs = 0.0;
  bool conclusion = false;
};

struct GehringScan {
  std::vector<BallPairRecord> balls;
  double eps = 0.0;
  double measured_A = 0.0;
  double premise_fraction = 0.0;
  std::size_t conclusion_failures = 0;
  double conclusion_ratio = 0.0;  // max improved / rhs over premise-passing balls
  bool outside_certificate = false;
  ConclusionConstants constants;
};

struct ScanBall {
  Point center{};
  double R = 0.0;
};
// Centers on every stride-th lattice point, R = R0 / 2^k >= min_radius_cells h,
// keeping only balls with B_3R compactly inside omega.
std::vector<ScanBall> scan_balls(const GridGeometry& g, const Region& omega, double R0, int stride,
                                 double min_radius_cells);

// Concentric pairs (B_R, B_3R) with B_3R inside omega, centers on a
// sub-lattice and dyadic R <= R0. The premise uses `A`; the conclusion uses
// the certificate's constants at `eps`.
GehringScan gehring_verify(const GridFunction& f1, const GridFunction& f2, const GehringCertificate& cert,
                           const Region& omega, double eps, const GehringScanConfig& scan = {});

struct ExitRadius {
  Point x{};
  double rho = 0.0;
  bool verified = false;  // Psi(x, rho') <= lambda for sampled rho' >= rho
};

struct ExitReport {
  double lambda0 = 0.0;
  std::vector<ExitRadius> radii;
  std::vector<std::size_t> vitali;  // indices into radii
  std::size_t skipped = 0;
  bool disjoint = true;
};

// Average of f over B(x, rho) with a linear partial-volume ramp; continuous in rho.
double ball_mean(const GridFunction& f, const Point& x, double rho);

ExitReport exit_radii(const GridFunction& f, double lambda, double r1, double r2, const Point& center, double R);

}  // namespace dptk
