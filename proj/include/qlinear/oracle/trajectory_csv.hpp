#pragma once

#include <optional>
#include <vector>

#include "qlinear/core/csv.hpp"
#include "qlinear/oracle/split_step.hpp"

namespace qlinear::oracle {

/// Columns t, mean_x, mean_p, width, norm, plus transmitted_fraction when
/// `transmitted` is given (one value per snapshot).
CsvTable trajectory_table(const Trajectory& traj, const UnitSystem& units,
                          const std::optional<std::vector<double>>& transmitted = std::nullopt);

}  // namespace qlinear::oracle
