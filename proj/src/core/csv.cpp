#include "qlinear/core/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qlinear/core/errors.hpp"

namespace qlinear {

std::string unit_tag(Dimension d, const UnitSystem& units) {
  if (d == Dimension::phase) return "rad";
  if (d == Dimension::dimensionless) return "1";
  if (units.label() != "si") return "nat";
  switch (d) {
    case Dimension::time:
      return "s";
    case Dimension::length:
      return "m";
    case Dimension::velocity:
      return "m/s";
    case Dimension::momentum:
      return "kg*m/s";
    case Dimension::energy:
      return "J";
    case Dimension::slope:
      return "J/m";
    default:
      return "1";
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

CsvTable::CsvTable(std::string schema, int version, std::vector<CsvColumn> columns,
                   UnitSystem units)
    : schema_(std::move(schema)),
      version_(version),
      columns_(std::move(columns)),
      units_(std::move(units)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) {
    throw ValidationError("csv " + schema_ + ": row width does not match the header");
  }
  rows_.push_back(values);
}

void CsvTable::write(std::ostream& os) const {
  os << "# qlinear " << schema_ << " v" << version_ << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) os << ',';
    os << columns_[i].name << '[' << unit_tag(columns_[i].dimension, units_) << ']';
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

void CsvTable::write_file(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  write(os);
}

}  // namespace qlinear
