#pragma once

#include <cstddef>
#include <vector>

#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/oracle/split_step.hpp"
#include "qlinear/tunneling/barrier.hpp"

namespace qlinear::tunneling {

/// Solver settings for a scattering run. `solver.n_steps` is the step budget,
/// `solver.record_every` the snapshot stride, and an absorber is required.
struct TunnelingRun {
  oracle::SolverConfig solver;
  /// T and R must each move by less than this between consecutive snapshots...
  double stationarity_tol = 1e-8;
  /// ...for this many snapshots in a row.
  std::size_t stationary_snapshots = 10;
  void validate() const;
};

struct FlowSample {
  oracle::Observables obs;
  double transmitted = 0.0;
  double reflected = 0.0;
  double residual = 0.0;
};

/// Above the barrier there are no turning points; a and b are then both
/// set to x_peak, which splits T from R at the top.
struct TunnelingResult {
  double energy = 0.0;  ///< p0^2/2m + V(x0)
  double turning_a = 0.0;
  double turning_b = 0.0;
  double d_prime = 0.0;  ///< x_peak - a

  /// Probability beyond b, including what the right absorber took.
  double transmitted = 0.0;
  /// Probability before a, including what the left absorber took.
  double reflected = 0.0;
  /// Probability still between a and b.
  double residual = 0.0;
  double absorbed_left = 0.0;
  double absorbed_right = 0.0;
  double t_final = 0.0;
  bool stationary = false;

  double sigma_launch = 0.0;
  /// Time from launch at which <x> first reaches a, or, if it never does,
  /// at which <x> peaks.
  double t_turning = 0.0;
  /// max(0, x_start - x0) m/p0 + p0/slope; NaN above the barrier.
  double t_turning_predicted = 0.0;
  double sigma_at_turning = 0.0;

  std::vector<FlowSample> history;

  /// |T + R + residual - 1|
  double accounting_error() const { return std::abs(transmitted + reflected + residual - 1.0); }
};

/// The step budget ran out before T and R settled; `partial()` holds the
/// state of the run at that point.
class TunnelingTimeout : public NumericalError {
 public:
  TunnelingTimeout(const std::string& what, TunnelingResult partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const TunnelingResult& partial() const noexcept { return partial_; }

 private:
  TunnelingResult partial_;
};

/// Launches `packet` at the barrier and runs the split-step oracle until the
/// packet has entered and left the barrier support and the transmitted and
/// reflected probabilities are stationary.
TunnelingResult run_tunneling(const GaussianSpec& packet, const BarrierSpec& barrier,
                              const SpatialGrid& grid, const TunnelingRun& run,
                              const UnitSystem& units);

/// Same, but the packet is first broadened by `delay` of free flight while
/// its centre is held at x0, so it arrives wider with an unchanged momentum
/// distribution.
TunnelingResult run_tunneling_delayed(const GaussianSpec& packet, double delay,
                                      const BarrierSpec& barrier, const SpatialGrid& grid,
                                      const TunnelingRun& run, const UnitSystem& units);

/// Free evolution by `delay` in the frame moving with p0/m: the returned
/// packet is centred where `packet` starts.
WaveFunction delayed_launch(const GaussianSpec& packet, double delay, const SpatialGrid& grid,
                            const UnitSystem& units);

enum class ScanMode {
  delay,          ///< values are free-flight delays applied to `base`
  initial_width,  ///< values replace base.sigma
};

struct ScanEntry {
  double value = 0.0;
  TunnelingResult result;
};

struct WidthScan {
  ScanMode mode = ScanMode::delay;
  double tolerance = 1e-6;
  /// Ascending in sigma_at_turning.
  std::vector<ScanEntry> entries;
  /// Index pairs (i, i + 1) of `entries` where T drops by more than `tolerance`.
  std::vector<std::pair<std::size_t, std::size_t>> violations;

  bool non_decreasing() const { return violations.empty(); }
};

/// Runs one scattering experiment per value, concurrently, and checks
/// whether T is non-decreasing in the width at the turning point.
WidthScan width_scan(const GaussianSpec& base, const std::vector<double>& values, ScanMode mode,
                     const BarrierSpec& barrier, const SpatialGrid& grid,
                     const TunnelingRun& run, const UnitSystem& units,
                     double tolerance = 1e-6);

}  // namespace qlinear::tunneling
