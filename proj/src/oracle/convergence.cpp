#include "qlinear/oracle/convergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qlinear/core/errors.hpp"
#include "qlinear/oracle/split_step.hpp"

namespace qlinear::oracle {

ConvergenceStudy convergence_study(const WaveFunction& psi, const Potential& V, double duration,
                                   std::span<const double> dt_list, const UnitSystem& units,
                                   const std::optional<WaveFunction>& reference) {
  if (dt_list.size() < 2) throw ValidationError("convergence_study: need at least two steps");
  for (std::size_t i = 1; i < dt_list.size(); ++i) {
    if (!(dt_list[i] < dt_list[i - 1])) {
      throw ValidationError("convergence_study: dt_list must be strictly decreasing");
    }
  }

  std::vector<WaveFunction> runs;
  runs.reserve(dt_list.size());
  for (double dt : dt_list) runs.push_back(evolve_to(psi, V, duration, dt, units));

  WaveFunction ref = reference.value_or(runs.back());
  if (!reference) {
    const auto half = evolve_to(psi, V, duration, dt_list.back() / 2.0, units);
    std::vector<Complex> amps(half.size());
    for (std::size_t j = 0; j < amps.size(); ++j) {
      amps[j] = (4.0 * half[j] - runs.back()[j]) / 3.0;
    }
    ref = WaveFunction(psi.grid(), std::move(amps), half.time());
  }

  ConvergenceStudy study;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    study.points.push_back({dt_list[i], l2_distance(runs[i], ref)});
  }

  // Walk from coarse to fine; stop the asymptotic range at the first
  // non-decrease or at the roundoff floor.
  std::size_t fit_end = study.points.size();
  for (std::size_t i = 0; i < study.points.size(); ++i) {
    const auto& p = study.points[i];
    if (p.error < kRoundoffFloor) {
      std::ostringstream msg;
      msg << "error " << p.error << " at dt = " << p.dt << " is at the roundoff plateau";
      study.flags.push_back(msg.str());
      study.monotone = false;
      fit_end = std::min(fit_end, i);
      break;
    }
    if (i > 0 && !(p.error < study.points[i - 1].error)) {
      std::ostringstream msg;
      msg << "error did not decrease from dt = " << study.points[i - 1].dt << " to dt = " << p.dt
          << " (grid-resolution limit?)";
      study.flags.push_back(msg.str());
      study.monotone = false;
      fit_end = std::min(fit_end, i);
    }
  }

  study.points_in_fit = fit_end;
  if (fit_end < 2) {
    study.slope = std::numeric_limits<double>::quiet_NaN();
    return study;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit_end; ++i) {
    const double x = std::log(study.points[i].dt), y = std::log(study.points[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(fit_end);
  study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

}  // namespace qlinear::oracle
