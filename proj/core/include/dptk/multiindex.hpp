#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace dptk {

inline constexpr int kMaxDim = 3;
using Point = std::array<double, kMaxDim>;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n);
  MultiIndex(std::initializer_list<int> entries);

  int dim() const { return n_; }
  int operator[](int axis) const { return e_[axis]; }
  int& operator[](int axis) { return e_[axis]; }

  int order() const;
  long long factorial() const;
  // x^sigma over the first dim() coordinates.
  double power(const Point& x) const;

  std::string to_string() const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  int n_ = 0;
  std::array<int, kMaxDim> e_{};
};

// tau >= sigma componentwise.
bool dominates(const MultiIndex& tau, const MultiIndex& sigma);

// tau - sigma; throws InputError unless tau >= sigma.
MultiIndex difference(const MultiIndex& tau, const MultiIndex& sigma);

// tau! / (tau - sigma)!
double falling_factorial(const MultiIndex& tau, const MultiIndex& sigma);

// All sigma with |sigma| == order, lexicographic ascending.
std::vector<MultiIndex> indices_of_order(int n, int order);

// All sigma with |sigma| <= order, by increasing order then lexicographic.
std::vector<MultiIndex> indices_up_to(int n, int order);

}  // namespace dptk
