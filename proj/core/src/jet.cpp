#include "dptk/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "dptk/error.hpp"

namespace dptk {

struct JetTable {
  int n = 0;
  int order = 0;
  std::vector<MultiIndex> index;
  // For each output slot, the pairs (i, j) with index[i] + index[j] == index[slot].
  std::vector<std::vector<std::pair<int, int>>> products;
  std::vector<double> factorial;
};

namespace {

std::shared_ptr<const JetTable> table_for(int n, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetTable>> cache;
  if (n < 1 || n > kMaxDim || order < 0) throw InputError("bad jet shape");
  std::lock_guard lock(mu);
  auto& slot = cache[{n, order}];
  if (slot) return slot;
  auto t = std::make_shared<JetTable>();
  t->n = n;
  t->order = order;
  t->index = indices_up_to(n, order);
  const int size = static_cast<int>(t->index.size());
  std::map<MultiIndex, int> where;
  for (int i = 0; i < size; ++i) where[t->index[i]] = i;
  t->products.resize(size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      if (t->index[i].order() + t->index[j].order() > order) continue;
      t->products[where.at(t->index[i] + t->index[j])].emplace_back(i, j);
    }
  for (const auto& s : t->index) t->factorial.push_back(static_cast<double>(s.factorial()));
  slot = t;
  return slot;
}

}  // namespace

Jet Jet::constant(int n, int order, double value) {
  auto t = table_for(n, order);
  std::vector<double> c(t->index.size(), 0.0);
  c[0] = value;
  return Jet(std::move(t), std::move(c));
}

Jet Jet::variable(int n, int order, int axis, double x0) {
  Jet j = constant(n, order, x0);
  if (order >= 1) {
    MultiIndex e(n);
    e[axis] = 1;
    for (std::size_t i = 0; i < j.t_->index.size(); ++i)
      if (j.t_->index[i] == e) j.c_[i] = 1.0;
  }
  return j;
}

Jet Jet::from_derivatives(int n, int order, const std::function<double(const MultiIndex&)>& deriv) {
  Jet j = constant(n, order, 0.0);
  for (std::size_t i = 0; i < j.t_->index.size(); ++i) j.c_[i] = deriv(j.t_->index[i]) / j.t_->factorial[i];
  return j;
}

int Jet::dim() const { return t_->n; }
int Jet::order() const { return t_->order; }

double Jet::derivative(const MultiIndex& sigma) const {
  if (sigma.order() > t_->order) throw InputError("jet order too low for " + sigma.to_string());
  for (std::size_t i = 0; i < t_->index.size(); ++i)
    if (t_->index[i] == sigma) return t_->factorial[i] * c_[i];
  throw InputError("multi-index " + sigma.to_string() + " out of range");
}

double Jet::derivative_norm(int k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < t_->index.size(); ++i)
    if (t_->index[i].order() == k) {
      const double d = t_->factorial[i] * c_[i];
      s += d * d;
    }
  return std::sqrt(s);
}

Jet& Jet::operator+=(const Jet& o) {
  if (t_ != o.t_) throw InputError("jet shapes differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (t_ != o.t_) throw InputError("jet shapes differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (auto& x : c_) x *= v;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.t_ != b.t_) throw InputError("jet shapes differ");
  std::vector<double> c(a.c_.size(), 0.0);
  for (std::size_t s = 0; s < c.size(); ++s)
    for (auto [i, j] : a.t_->products[s]) c[s] += a.c_[i] * b.c_[j];
  return Jet(a.t_, std::move(c));
}

Jet Jet::compose(std::span<const double> derivs) const {
  const int K = t_->order;
  if (static_cast<int>(derivs.size()) < K + 1) throw InputError("compose needs order+1 derivatives");
  Jet w = *this;
  w.c_[0] = 0.0;
  Jet out = constant(dim(), K, derivs[0]);
  Jet wk = constant(dim(), K, 1.0);
  double fact = 1.0;
  for (int k = 1; k <= K; ++k) {
    wk = wk * w;
    fact *= k;
    const double coef = derivs[k] / fact;
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += coef * wk.c_[i];
  }
  return out;
}

Jet Jet::reciprocal() const {
  const double x = value();
  if (x == 0.0) throw InputError("jet reciprocal of zero");
  std::vector<double> d(order() + 1);
  double v = 1.0 / x;
  for (int k = 0; k <= order(); ++k) {
    d[k] = v;
    v *= -(k + 1) / x;
  }
  return compose(d);
}

Jet Jet::exp() const {
  std::vector<double> d(order() + 1, std::exp(value()));
  return compose(d);
}

Jet Jet::sqrt() const {
  const double x = value();
  if (!(x > 0.0)) throw InputError("jet sqrt needs a positive value");
  std::vector<double> d(order() + 1);
  double e = 0.5, coef = 1.0;
  for (int k = 0; k <= order(); ++k) {
    d[k] = coef * std::pow(x, 0.5 - k);
    coef *= e;
    e -= 1.0;
  }
  return compose(d);
}

}  // namespace dptk
