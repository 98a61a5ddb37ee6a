#include "qlinear/oracle/trajectory_csv.hpp"

#include "qlinear/core/errors.hpp"

namespace qlinear::oracle {

CsvTable trajectory_table(const Trajectory& traj, const UnitSystem& units,
                          const std::optional<std::vector<double>>& transmitted) {
  std::vector<CsvColumn> cols{{"t", Dimension::time},
                              {"mean_x", Dimension::length},
                              {"mean_p", Dimension::momentum},
                              {"width", Dimension::length},
                              {"norm", Dimension::dimensionless}};
  if (transmitted) {
    if (transmitted->size() != traj.snapshots.size()) {
      throw ValidationError("trajectory csv: one transmitted fraction per snapshot required");
    }
    cols.push_back({"transmitted_fraction", Dimension::dimensionless});
  }
  CsvTable table("trajectory", 1, std::move(cols), units);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const auto& o = traj.snapshots[i].obs;
    std::vector<double> row{o.time, o.mean_x, o.mean_p, o.width, o.norm_squared};
    if (transmitted) row.push_back((*transmitted)[i]);
    table.add_row(row);
  }
  return table;
}

}  // namespace qlinear::oracle
