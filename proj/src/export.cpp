#include "qmlab/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qmlab/error.hpp"

namespace qmlab {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view text) {
  double value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Io, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void export_grid(const doubleslit::Field2& field, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "x,y,value\n";
  for (int j = 0; j < field.grid.ny; ++j) {
    const std::string y = format_number(field.grid.y(j));
    for (int i = 0; i < field.grid.nx; ++i) {
      out << format_number(field.grid.x(i)) << ',' << y << ',' << format_number(field.values(j, i)) << '\n';
    }
  }
  finish(out, path);
}

void export_series(std::string_view first, std::string_view second, std::span<const double> a,
                   std::span<const double> b, const std::filesystem::path& path) {
  if (a.size() != b.size()) throw Error(ErrorKind::Io, "series columns differ in length");
  auto out = open_for_write(path);
  out << first << ',' << second << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) out << format_number(a[i]) << ',' << format_number(b[i]) << '\n';
  finish(out, path);
}

void export_points(std::span<const double> x, std::span<const double> y,
                   std::span<const double> value, const std::filesystem::path& path) {
  if (x.size() != y.size() || x.size() != value.size()) {
    throw Error(ErrorKind::Io, "point columns differ in length");
  }
  auto out = open_for_write(path);
  out << "x,y,value\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_number(x[i]) << ',' << format_number(y[i]) << ',' << format_number(value[i]) << '\n';
  }
  finish(out, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty csv " + path.string());
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_number(cell));
    if (row.size() != table.header.size()) throw Error(ErrorKind::Io, "ragged csv row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qmlab
