#include "dptk/report.hpp"

#include "json_util.hpp"

namespace dptk {

namespace {

detail::Json value_json(const ReportValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return detail::finite_or_string(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  detail::Json a = detail::Json::array();
  for (double x : std::get<std::vector<double>>(v)) a.push_back(detail::finite_or_string(x));
  return a;
}

detail::Json to_json(const Report& r) {
  detail::Json j;
  j["suite"] = r.suite;
  detail::Json cfg = detail::Json::object();
  for (const auto& [k, v] : r.config) cfg[k] = value_json(v);
  j["config_echo"] = cfg;
  detail::Json checks = detail::Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"status", c.pass ? "pass" : "fail"},
                      {"measured", detail::finite_or_string(c.measured)},
                      {"bound", detail::finite_or_string(c.bound)},
                      {"tolerance", detail::finite_or_string(c.tolerance)}});
  j["checks"] = checks;
  detail::Json consts = detail::Json::object();
  for (const auto& [k, v] : r.constants) consts[k] = value_json(v);
  j["constants"] = consts;
  j["status"] = r.passed() ? "pass" : "fail";
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

}  // namespace

void Report::add(std::vector<Check> more, const std::string& prefix) {
  for (auto& c : more) {
    if (!prefix.empty()) c.name = prefix + "." + c.name;
    checks.push_back(std::move(c));
  }
}

std::string report_json(const Report& r) { return detail::dump17(to_json(r)) + "\n"; }

std::string report_json(const std::vector<Report>& reports) {
  detail::Json j;
  bool ok = true;
  detail::Json arr = detail::Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back(to_json(r));
  }
  j["status"] = ok ? "pass" : "fail";
  j["reports"] = arr;
  return detail::dump17(j) + "\n";
}

}  // namespace dptk
