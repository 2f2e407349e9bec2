#include "dptk/multiindex.hpp"

#include <algorithm>
#include <cmath>

#include "dptk/error.hpp"

namespace dptk {

MultiIndex::MultiIndex(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw InputError("multi-index dimension must be in 1..3");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : n_(static_cast<int>(entries.size())) {
  if (n_ < 1 || n_ > kMaxDim) throw InputError("multi-index dimension must be in 1..3");
  int i = 0;
  for (int v : entries) {
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
    e_[i++] = v;
  }
}

int MultiIndex::order() const {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += e_[i];
  return s;
}

long long MultiIndex::factorial() const {
  long long f = 1;
  for (int i = 0; i < n_; ++i)
    for (int k = 2; k <= e_[i]; ++k) f *= k;
  return f;
}

double MultiIndex::power(const Point& x) const {
  double p = 1.0;
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < e_[i]; ++k) p *= x[i];
  return p;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < n_; ++i) {
    if (i) s += ',';
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.n_ != b.n_) throw InputError("multi-index dimension mismatch");
  MultiIndex r = a;
  for (int i = 0; i < a.n_; ++i) r.e_[i] += b.e_[i];
  return r;
}

bool dominates(const MultiIndex& tau, const MultiIndex& sigma) {
  if (tau.dim() != sigma.dim()) return false;
  for (int i = 0; i < tau.dim(); ++i)
    if (tau[i] < sigma[i]) return false;
  return true;
}

MultiIndex difference(const MultiIndex& tau, const MultiIndex& sigma) {
  if (!dominates(tau, sigma))
    throw InputError("multi-index difference " + tau.to_string() + " - " + sigma.to_string() +
                     " requires tau >= sigma");
  MultiIndex r(tau.dim());
  for (int i = 0; i < tau.dim(); ++i) r[i] = tau[i] - sigma[i];
  return r;
}

double falling_factorial(const MultiIndex& tau, const MultiIndex& sigma) {
  double f = 1.0;
  for (int i = 0; i < tau.dim(); ++i)
    for (int k = tau[i] - sigma[i] + 1; k <= tau[i]; ++k) f *= k;
  return f;
}

namespace {

void enumerate(int n, int axis, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (axis == n - 1) {
    cur[axis] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[axis] = v;
    enumerate(n, axis + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  if (order < 0) return out;
  MultiIndex cur(n);
  enumerate(n, 0, order, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(int n, int order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= order; ++k) {
    auto level = indices_of_order(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace dptk
