#pragma once

#include "dptk/grid.hpp"
#include "dptk/ratio.hpp"

namespace dptk {

// Integral of |y|^{gamma - n} over one cell of width h centered at 0.
double self_cell_integral(int n, double h, double gamma);

// sum over cells y in the ball of |f(y)| h^n |x - y|^{gamma - n}, evaluated at
// every grid point; the cell x = y uses self_cell_integral.
GridFunction riesz_potential(const GridFunction& f, double gamma, const Region& ball);

struct StrongTypeReport {
  double potential_norm = 0.0;  // L^{nr/(n - gamma r)}(B)
  double data_norm = 0.0;       // L^r(B)
  double ratio = 0.0;
};
StrongTypeReport strong_type_report(const GridFunction& f, double r, double gamma, const Region& ball);

struct SplitReport {
  RatioStats ratio;
  double beta = 0.0;
  double seminorm = 1.0;
  double reference = 0.0;  // seminorm^{1/q} max(1, 2^{1 + alpha/q - beta})
  bool pass = false;
};
// sup_B a^{1/q} I_1 f / (I_1(a^{1/q} f) + R^{1 + alpha/q - beta} I_beta f).
SplitReport weighted_split_check(const GridFunction& f, const GridFunction& a, double p, double q, double alpha,
                                 const Region& ball);

struct PointwiseRieszReport {
  RatioStats ratio;
  double residual = 0.0;
  bool pass = false;
};
// sup_B |u| / I_1(|Du|); requires a vanishing eta-weighted mean.
PointwiseRieszReport pointwise_riesz_bound_check(const GridFunction& u, const Region& ball, const GridFunction& eta);

struct SobolevPoincareReport {
  double lhs = 0.0;           // (avg a^{r/q} |u / R^l|^r)^{1/r}
  double rhs_weighted = 0.0;  // (avg a |D^l u|^q)^{1/q}
  double rhs_phase = 0.0;     // R^{alpha/q} (avg |D^l u|^p)^{1/p}
  double ratio = 0.0;         // lhs / (rhs_weighted + rhs_phase)
  double r = 0.0;
  double residual = 0.0;
  // When l q >= n: s in (p, q) with r = (s_l)^*, else 0.
  double auxiliary_s = 0.0;
};
SobolevPoincareReport sobolev_poincare_report(const GridFunction& u, const GridFunction& a, double p, double q,
                                              double alpha, const Region& ball, const GridFunction& eta, int order,
                                              double r_target);

}  // namespace dptk
