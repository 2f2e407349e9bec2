#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dptk/corpus.hpp"
#include "dptk/exponents.hpp"
#include "dptk/report.hpp"

namespace dptk {

struct SuiteOptions {
  std::uint64_t seed = kCorpusSeed;
  // Cells per axis at n = 2; n = 1 grids use twice as many. 0 picks 128.
  int grid_size = 0;
  // Exponent block for the exponents and pipeline suites; defaults to the 2D model.
  std::optional<ExponentConfig> config;
  bool timing = false;
};

// Every runnable suite except "all", in the order "all" runs them.
const std::vector<std::string>& suite_names();

// Throws InputError on an unknown name or an invalid option.
std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace dptk
