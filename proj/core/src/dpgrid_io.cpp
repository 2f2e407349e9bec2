#include "dptk/dpgrid_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dptk/error.hpp"

namespace dptk {

namespace {

using nlohmann::json;

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

}  // namespace

void write_dpgrid(const GridFunction& u, std::ostream& os) {
  const GridGeometry& g = u.geometry();
  json h;
  h["magic"] = "DPGRID";
  h["version"] = 1;
  h["n"] = g.n;
  h["dims"] = std::vector<int>(g.dims.begin(), g.dims.begin() + g.n);
  h["origin"] = std::vector<double>(g.origin.begin(), g.origin.begin() + g.n);
  h["spacing"] = g.spacing;
  h["components"] = u.components();
  os << h.dump() << '\n';
  for (double v : u.values()) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
  if (!os) throw InputError("failed to write DPGRID data");
}

void write_dpgrid(const GridFunction& u, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  write_dpgrid(u, os);
}

GridFunction read_dpgrid(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty DPGRID stream");
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed DPGRID header: ") + e.what());
  }
  if (h.value("magic", "") != "DPGRID") throw InputError("not a DPGRID file");
  if (h.value("version", 0) != 1) throw InputError("unsupported DPGRID version");
  GridGeometry g;
  try {
    g.n = h.at("n").get<int>();
    const auto dims = h.at("dims").get<std::vector<int>>();
    const auto origin = h.at("origin").get<std::vector<double>>();
    if (static_cast<int>(dims.size()) != g.n || static_cast<int>(origin.size()) != g.n)
      throw InputError("DPGRID dims/origin length differs from n");
    for (int a = 0; a < g.n; ++a) {
      g.dims[a] = dims[a];
      g.origin[a] = origin[a];
    }
    g.spacing = h.at("spacing").get<double>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed DPGRID header: ") + e.what());
  }
  g.validate();
  const int comps = h.value("components", 1);
  if (comps < 1) throw InputError("DPGRID components must be positive");
  std::vector<double> values(g.size() * comps);
  for (double& v : values) {
    char buf[8];
    if (!is.read(buf, 8)) throw InputError("DPGRID payload is truncated");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    v = std::bit_cast<double>(to_little(bits));
  }
  GridFunction u(g, comps, std::move(values));
  u.check_finite();
  return u;
}

GridFunction read_dpgrid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  return read_dpgrid(is);
}

void write_grid_csv(const GridFunction& u, const std::filesystem::path& path) {
  const GridGeometry& g = u.geometry();
  if (g.n > 2) throw InputError("CSV grids support n <= 2 only");
  std::ofstream os(path);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  os.precision(17);
  for (int a = 0; a < g.n; ++a) os << (a ? "," : "") << "x" << a;
  for (int c = 0; c < u.components(); ++c) os << ",c" << c;
  os << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.center(i);
    for (int a = 0; a < g.n; ++a) os << (a ? "," : "") << x[a];
    for (int c = 0; c < u.components(); ++c) os << ',' << u(i, c);
    os << '\n';
  }
}

namespace {

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw InputError("CSV cell is not a number: '" + cell + "'");
    }
  }
  return out;
}

}  // namespace

GridFunction read_grid_csv(const std::filesystem::path& path, int n) {
  if (n < 1 || n > 2) throw InputError("CSV grids support n <= 2 only");
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty CSV grid");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    rows.push_back(split_numbers(line));
  }
  if (rows.empty()) throw InputError("CSV grid has no rows");
  const std::size_t width = rows.front().size();
  if (width <= static_cast<std::size_t>(n)) throw InputError("CSV grid needs at least one component column");
  const int comps = static_cast<int>(width) - n;

  std::array<std::vector<double>, 2> axes;
  for (const auto& r : rows) {
    if (r.size() != width) throw InputError("ragged CSV grid");
    for (int a = 0; a < n; ++a) axes[a].push_back(r[a]);
  }
  GridGeometry g;
  g.n = n;
  for (int a = 0; a < n; ++a) {
    auto& v = axes[a];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }), v.end());
    if (v.size() < 2) throw InputError("CSV grid needs at least two distinct coordinates per axis");
    g.dims[a] = static_cast<int>(v.size());
  }
  g.spacing = (axes[0].back() - axes[0].front()) / (g.dims[0] - 1);
  for (int a = 0; a < n; ++a) {
    const double h = (axes[a].back() - axes[a].front()) / (g.dims[a] - 1);
    if (std::abs(h - g.spacing) > 1e-6 * g.spacing) throw InputError("CSV grid spacing is not uniform");
    g.origin[a] = axes[a].front() - 0.5 * g.spacing;
  }
  g.validate();
  if (rows.size() != g.size()) throw InputError("CSV grid does not fill the lattice");
  GridFunction u(g, comps);
  for (const auto& r : rows) {
    std::array<int, kMaxDim> c{};
    for (int a = 0; a < n; ++a) c[a] = static_cast<int>(std::lround((r[a] - g.origin[a]) / g.spacing - 0.5));
    const std::size_t idx = g.index(c);
    for (int k = 0; k < comps; ++k) u(idx, k) = r[n + k];
  }
  u.check_finite();
  return u;
}

GridFunction read_grid(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream is(path);
    std::string header;
    if (!is || !std::getline(is, header)) throw InputError("cannot read " + path.string());
    int n = 0;
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ','))
      if (!col.empty() && col[0] == 'x') ++n;
    return read_grid_csv(path, n);
  }
  return read_dpgrid(path);
}

}  // namespace dptk
