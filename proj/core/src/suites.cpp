#include "dptk/suites.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "dptk/error.hpp"
#include "dptk/weights.hpp"
#include "suites/common.hpp"

namespace dptk {

namespace suites {

Report start(const std::string& suite, const SuiteOptions& opt) {
  Report r;
  r.suite = suite;
  r.echo("seed", static_cast<double>(opt.seed));
  r.echo("grid_size_2d", static_cast<double>(cells_2d(opt)));
  r.echo("grid_size_1d", static_cast<double>(cells_1d(opt)));
  return r;
}

GridFunction power_weight(const GridGeometry& g, double alpha) {
  const int n = g.n;
  const auto raw = sample(g, [alpha, n](const Point& x) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += x[k] * x[k];
    return std::pow(std::sqrt(s), alpha);
  });
  return regularize(raw, alpha);
}

GridFunction constant(const GridGeometry& g, double c) {
  GridFunction out(g);
  for (double& v : out.values()) v = c;
  return out;
}

}  // namespace suites

namespace {

using SuiteFn = std::function<std::vector<Report>(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"grid", suites::grid},
      {"weights", suites::weights},
      {"exponents", suites::exponents},
      {"maximal", suites::maximal},
      {"potentials", suites::potentials},
      {"sobolev_poincare", suites::sobolev_poincare},
      {"meanpoly", suites::meanpoly},
      {"whitney", suites::whitney},
      {"truncation", suites::truncation},
      {"gehring", suites::gehring},
      {"pipeline", suites::pipeline},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  // sobolev_poincare is part of potentials and only runs on its own by name.
  static const std::vector<std::string> names{"grid",     "weights", "exponents",  "maximal", "potentials",
                                              "meanpoly", "whitney", "truncation", "gehring", "pipeline"};
  return names;
}

std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (opt.grid_size != 0 && (opt.grid_size < 32 || opt.grid_size % 16 != 0))
    throw InputError("grid size must be a multiple of 16 and at least 32");
  if (name == "all") {
    std::vector<Report> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  auto reports = it->second(opt);
  if (opt.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : reports) r.timing_ms = ms;  // whole-suite wall time
  }
  return reports;
}

}  // namespace dptk
