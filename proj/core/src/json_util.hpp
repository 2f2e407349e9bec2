#pragma once

#include <string>

#include <json.hpp>

namespace dptk::detail {

using Json = nlohmann::ordered_json;

// Serializes with every float at 17 significant digits; infinities become
// the strings "inf"/"-inf" and NaN becomes null.
std::string dump17(const Json& j, int indent = 2);

// Accepts numbers or the strings "inf"/"infinity".
double number_or_inf(const Json& j);
Json finite_or_string(double v);

}  // namespace dptk::detail
