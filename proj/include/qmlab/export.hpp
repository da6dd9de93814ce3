#pragma once

// Plain-text exports. Numbers use 17 significant digits through
// std::to_chars, so files are locale independent and round-trip exactly.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmlab/doubleslit.hpp"

namespace qmlab {

/// Shortest decimal form that parses back to the same double; locale independent.
std::string format_number(double value);
double parse_number(std::string_view text);

/// `x,y,value`, one row per grid point, y outer and x inner.
void export_grid(const doubleslit::Field2& field, const std::filesystem::path& path);

/// Two-column CSV with the given header names (e.g. "x", "value").
void export_series(std::string_view first, std::string_view second, std::span<const double> a,
                   std::span<const double> b, const std::filesystem::path& path);

/// Three-column `x,y,value` CSV from parallel columns.
void export_points(std::span<const double> x, std::span<const double> y,
                   std::span<const double> value, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace qmlab
