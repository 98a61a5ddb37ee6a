#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qlinear/core/units.hpp"

namespace qlinear {

enum class Dimension { time, length, velocity, momentum, energy, slope, phase, dimensionless };

/// Unit label for a column header: SI symbols when the unit system is SI,
/// "nat" (hbar = m = 1 scale) otherwise; "rad" and "1" in both.
std::string unit_tag(Dimension d, const UnitSystem& units);

struct CsvColumn {
  std::string name;
  Dimension dimension = Dimension::dimensionless;
};

/// Tabular output. Every file starts with `# qlinear <schema> v<version>`
/// and a header row `name[unit],...`; numbers are printed as %.12e so equal
/// inputs give byte-identical files.
class CsvTable {
 public:
  CsvTable(std::string schema, int version, std::vector<CsvColumn> columns, UnitSystem units);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& os) const;
  /// Creates parent directories as needed.
  void write_file(const std::string& path) const;

 private:
  std::string schema_;
  int version_;
  std::vector<CsvColumn> columns_;
  UnitSystem units_;
  std::vector<std::vector<double>> rows_;
};

std::string format_number(double v);

}  // namespace qlinear
