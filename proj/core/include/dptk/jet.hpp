#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "dptk/multiindex.hpp"

namespace dptk {

struct JetTable;

// Truncated Taylor expansion f(x0 + h) = sum_{|a| <= order} c_a h^a in n variables.
class Jet {
 public:
  static Jet constant(int n, int order, double value);
  // x_axis around x0[axis].
  static Jet variable(int n, int order, int axis, double x0);
  // Taylor jet with the given partial derivatives at the base point.
  static Jet from_derivatives(int n, int order, const std::function<double(const MultiIndex&)>& deriv);

  int dim() const;
  int order() const;
  double value() const { return c_[0]; }
  // d^sigma f(x0) = sigma! c_sigma.
  double derivative(const MultiIndex& sigma) const;
  // Euclidean norm of all derivatives of exactly this order.
  double derivative_norm(int k) const;

  // g(f) given g(f0), g'(f0), ..., g^(order)(f0).
  Jet compose(std::span<const double> derivs) const;
  Jet reciprocal() const;
  Jet exp() const;
  Jet sqrt() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v) { c_[0] += v; return *this; }
  Jet& operator*=(double v);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double v) { return a += v; }
  friend Jet operator+(double v, Jet a) { return a += v; }
  friend Jet operator-(Jet a, double v) { return a += -v; }
  friend Jet operator-(double v, Jet a) { a *= -1.0; return a += v; }
  friend Jet operator*(Jet a, double v) { return a *= v; }
  friend Jet operator*(double v, Jet a) { return a *= v; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

 private:
  Jet(std::shared_ptr<const JetTable> t, std::vector<double> c) : t_(std::move(t)), c_(std::move(c)) {}
  std::shared_ptr<const JetTable> t_;
  std::vector<double> c_;
};

}  // namespace dptk
