#pragma once

#include <filesystem>
#include <iosfwd>

#include "dptk/grid.hpp"

namespace dptk {

// DPGRID v1: one JSON header line, then float64 little-endian samples,
// row-major over axes with the component index fastest.
void write_dpgrid(const GridFunction& u, std::ostream& os);
void write_dpgrid(const GridFunction& u, const std::filesystem::path& path);
GridFunction read_dpgrid(std::istream& is);
GridFunction read_dpgrid(const std::filesystem::path& path);

// CSV with columns x0[,x1],c0[,c1...], one row per cell center (n <= 2).
void write_grid_csv(const GridFunction& u, const std::filesystem::path& path);
GridFunction read_grid_csv(const std::filesystem::path& path, int n);

// Dispatches on the extension: ".csv" reads CSV (n taken from the header row), anything else DPGRID.
GridFunction read_grid(const std::filesystem::path& path);

}  // namespace dptk
