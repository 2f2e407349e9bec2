#pragma once

#include <string>
#include <vector>

namespace dptk {

// One named, measured inequality. `measured` is compared against `bound`
// with `tolerance`; the producer decides the sense and sets `pass`.
struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

// Strict positivity of a slack.
inline Check positive(std::string name, double slack) { return {std::move(name), slack > 0.0, slack, 0.0, 0.0}; }

// measured <= bound * (1 + tolerance)
inline Check at_most(std::string name, double measured, double bound, double tolerance = 0.0) {
  return {std::move(name), measured <= bound * (1.0 + tolerance), measured, bound, tolerance};
}

}  // namespace dptk
