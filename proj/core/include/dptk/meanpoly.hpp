#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dptk/grid.hpp"
#include "dptk/ratio.hpp"

namespace dptk {

// sum_sigma a_sigma (x - x0)^sigma over |sigma| <= degree, per component.
class MVPolynomial {
 public:
  MVPolynomial(int n, int degree, const Point& center, int components = 1);

  int dim() const { return n_; }
  int degree() const { return degree_; }
  int components() const { return components_; }
  const Point& center() const { return center_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  double coefficient(const MultiIndex& sigma, int comp = 0) const;
  void set_coefficient(const MultiIndex& sigma, double value, int comp = 0);

  double evaluate(const Point& x, int comp = 0) const;
  // Zero polynomial when |sigma| > degree.
  MVPolynomial differentiate(const MultiIndex& sigma) const;
  // Same polynomial expanded around a new center (Taylor shift).
  MVPolynomial recenter(const Point& center) const;
  GridFunction sample(const GridGeometry& g) const;

  MVPolynomial& operator+=(const MVPolynomial& other);
  MVPolynomial& operator-=(const MVPolynomial& other);

 private:
  std::size_t slot(const MultiIndex& sigma) const;

  int n_;
  int degree_;
  int components_;
  Point center_;
  std::vector<MultiIndex> indices_;
  std::vector<double> coeffs_;  // [index][component]
};

// Cells and nonnegative weights defining an average (f)_{B,eta}.
struct WeightedCells {
  std::vector<std::size_t> index;
  std::vector<double> weight;

  static WeightedCells from(const GridGeometry& g, const Region& region, const GridFunction& eta);
  double average(std::span<const double> values, int components, int comp) const;
};

// Partial derivatives of u for all |sigma| <= order, computed once.
class DerivativeCache {
 public:
  DerivativeCache(const GridFunction& u, int order);
  const GridFunction& get(const MultiIndex& sigma) const;
  const GridFunction& base() const { return u_; }
  int order() const { return order_; }

 private:
  GridFunction u_;
  int order_;
  std::map<MultiIndex, GridFunction> d_;
};

// Mean-value polynomial of degree m-1: (d_sigma u)_{B,eta} = (d_sigma P)_{B,eta}
// for |sigma| <= m-1, built top-down in |sigma|.
MVPolynomial fit(const GridFunction& u, const Region& region, const GridFunction& eta, int m, const Point& center);
MVPolynomial fit(const DerivativeCache& du, const WeightedCells& cells, int m, const Point& center);

// max over sigma, components of |(d_sigma u - d_sigma P)_{B,eta}|.
double moment_residual(const GridFunction& u, const MVPolynomial& p, const Region& region, const GridFunction& eta);

struct OrderRatio {
  int order = 0;
  RatioStats ratio;
};

// sup over B and the auxiliary ball of |D^l P| / sum_{mu=l}^{m-1} R^{mu-l} |(D^mu u)_{B,eta}|.
std::vector<OrderRatio> coefficient_bounds_report(const MVPolynomial& p, const GridFunction& u, const Region& ball,
                                                  const GridFunction& eta, const Region& aux_ball);

struct IntegrationByPartsReport {
  std::vector<double> cutoff_constants;  // sup |D^l eta| R^l, l = 0..m
  std::vector<OrderRatio> ratios;        // sup_B |D^l P| / avg_B |D^l u|
};
// Throws InputError naming the worst order if eta is not a cutoff supported
// in B with sup |D^l eta| R^l <= cutoff_bound.
IntegrationByPartsReport integration_by_parts_report(const MVPolynomial& p, const GridFunction& u,
                                                     const Region& ball, const GridFunction& eta,
                                                     double cutoff_bound = 1e3);

// sup_B sum_{k<=l} |D^k u - D^k P| / R^{l-k} over M_B^{2l+1}(|D^l u|), with P
// of degree m-1 fitted on the ball with eta.
RatioStats kernel_bound_report(const GridFunction& u, const Region& ball, const GridFunction& eta, int m, int order);

// Euclidean norm of the full derivative array of order l of P at x.
double derivative_norm(const MVPolynomial& p, int order, const Point& x);

std::string polynomial_json(const MVPolynomial& p);

}  // namespace dptk
