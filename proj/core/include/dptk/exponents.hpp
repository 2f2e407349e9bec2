#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "dptk/check.hpp"

namespace dptk {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// t' with 1' = inf and inf' = 1.
double holder_conjugate(double t);
// n t / (n - order t) when order t < n, otherwise inf.
double sobolev_exponent(double t, int order, int n);

enum Phase : int { kP = 0, kQ = 1 };

struct ExponentConfig {
  int n = 2;
  int m = 1;
  int N = 1;
  double p = 2.0;
  double q = 2.2;
  double alpha = 0.5;
  double a_seminorm = 1.0;
  double nu = 1.0;
  double beta_src = kInfinity;
  // Data integrability exponents indexed [phase][order], order 0..m.
  std::array<std::vector<double>, 2> s;
  std::array<std::vector<double>, 2> t;

  double exponent(int phase) const { return phase == kP ? p : q; }

  // All data exponents infinite: the pure model system.
  static ExponentConfig model(int n, int m, double p, double q, double alpha);
};

// Every assumption on the parameter block, with slacks. Never throws.
std::vector<Check> validate(const ExponentConfig& cfg);

struct DerivedExponents {
  // Indexed [phase][order].
  std::array<std::vector<double>, 2> gamma;
  std::array<std::vector<double>, 2> s_hat;
  std::array<std::vector<double>, 2> t_hat;
  double delta0 = 0.0;
  // Lower edge of the feasible delta0 interval, located by bisection.
  double delta0_floor = 0.0;
  std::vector<double> beta;
};

// Fills gamma, s_hat, t_hat. Throws InputError naming the violated condition.
DerivedExponents select_gammas(const ExponentConfig& cfg);
// Fills delta0, delta0_floor and beta on a result of select_gammas.
void select_delta0(const ExponentConfig& cfg, DerivedExponents& d);
DerivedExponents derive_exponents(const ExponentConfig& cfg);

// Re-checks every selection constraint and the conjugate identities.
std::vector<Check> validate_derived(const ExponentConfig& cfg, const DerivedExponents& d);

struct RieszGap {
  double beta = 0.0;
  double sobolev_residual = 0.0;  // |np/(n - beta p) - nq/(n - q)|, relative
  double scaling_residual = 0.0;  // |(1 + alpha/q - beta) - (n/q)(1 + alpha/n - q/p)|
  bool in_range = false;          // 1 <= beta < n/p
};

// beta = n(1/p - 1/q) + 1 for 1 <= p <= q < n.
RieszGap riesz_gap(double p, double q, int n, double alpha);

ExponentConfig parse_exponent_config(const std::string& json_text);
ExponentConfig load_exponent_config(const std::string& path);
std::string exponent_config_json(const ExponentConfig& cfg);
std::string derived_exponents_json(const ExponentConfig& cfg, const DerivedExponents& d);

}  // namespace dptk
