#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dptk/check.hpp"

namespace dptk {

using ReportValue = std::variant<double, std::vector<double>, std::string>;

struct Report {
  std::string suite;
  std::vector<std::pair<std::string, ReportValue>> config;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, ReportValue>> constants;
  std::optional<double> timing_ms;

  bool passed() const { return all_pass(checks); }
  void add(std::vector<Check> more, const std::string& prefix = "");
  void constant(std::string name, ReportValue v) { constants.emplace_back(std::move(name), std::move(v)); }
  void echo(std::string name, ReportValue v) { config.emplace_back(std::move(name), std::move(v)); }
};

// {suite, config_echo, checks, constants[, timing_ms]} with 17 significant digits.
std::string report_json(const Report& r);
// Several reports as {"status", "reports": [...]}.
std::string report_json(const std::vector<Report>& reports);

}  // namespace dptk
