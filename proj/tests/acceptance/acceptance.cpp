// Runs `dptool verify --suite all` twice (1 and 4 threads) and prints one
// PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <array>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  std::string out;
  int status = -1;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 1 << 16> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  r.status = pclose(pipe);
  return r;
}

struct Criterion {
  int id;
  std::string what;
  std::vector<std::string> suites;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-dptool>\n";
    return 2;
  }
  const std::string tool = argv[1];
  const std::string args = " verify --suite all --seed 0x5EED";
  const Run one = run(tool + " --threads 1" + args);
  const Run four = run(tool + " --threads 4" + args);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(one.out);
  } catch (const std::exception& e) {
    std::cout << "could not parse dptool output: " << e.what() << "\n";
    return 1;
  }

  // suite -> (checks, failed check names)
  std::map<std::string, std::pair<int, std::vector<std::string>>> by_suite;
  for (const auto& rep : doc["reports"]) {
    auto& slot = by_suite[rep["suite"].get<std::string>()];
    for (const auto& c : rep["checks"]) {
      ++slot.first;
      if (c["status"] != "pass") slot.second.push_back(c["name"].get<std::string>());
    }
  }

  const std::vector<Criterion> criteria{
      {1, "exponent identities", {"exponents.config", "exponents.random"}},
      {2, "gehring constants", {"gehring.constants"}},
      {3, "gehring verification", {"gehring.verify"}},
      {4, "mean-value polynomials", {"meanpoly"}},
      {5, "whitney cover and partition", {"whitney"}},
      {6, "truncation", {"truncation"}},
      {7, "sobolev-poincare", {"sobolev_poincare"}},
      {8, "maximal operators", {"maximal"}},
      {9, "pipeline", {"pipeline.self_improve", "pipeline.model"}},
  };

  bool all = true;
  for (const auto& c : criteria) {
    int checks = 0;
    std::vector<std::string> failed;
    bool missing = false;
    for (const auto& s : c.suites) {
      const auto it = by_suite.find(s);
      if (it == by_suite.end()) {
        missing = true;
        failed.push_back(s + " (no report)");
        continue;
      }
      checks += it->second.first;
      failed.insert(failed.end(), it->second.second.begin(), it->second.second.end());
    }
    const bool ok = !missing && checks > 0 && failed.empty();
    all = all && ok;
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.what << " (" << checks
              << " checks";
    if (!failed.empty()) {
      std::cout << "; failed:";
      for (const auto& f : failed) std::cout << " " << f;
    }
    std::cout << ")\n";
  }

  const bool same = !one.out.empty() && one.out == four.out;
  all = all && same;
  std::cout << "criterion 10: " << (same ? "PASS" : "FAIL") << "  determinism (" << one.out.size()
            << " bytes, threads 1 vs 4 " << (same ? "identical" : "differ") << ")\n";

  const bool status_ok = doc.value("status", "") == "pass" && one.status == 0;
  if (!status_ok) std::cout << "dptool reported overall failure\n";
  all = all && status_ok;
  std::cout << "overall: " << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : 1;
}
