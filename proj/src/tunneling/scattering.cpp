#include "qlinear/tunneling/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "qlinear/core/observables.hpp"
#include "qlinear/core/spectral.hpp"

namespace qlinear::tunneling {
namespace {

// Norm that has to enter the barrier support before a run counts as having
// interacted with it, and the norm below which it counts as having left.
constexpr double kInteractionThreshold = 1e-3;
constexpr double kDepartureThreshold = 1e-6;

struct Regions {
  double left = 0.0;
  double middle = 0.0;
  double right = 0.0;
};

Regions split_norm(const WaveFunction& psi, double a, double b) {
  Regions r;
  const auto& g = psi.grid();
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double w = std::norm(psi[j]) * g.dx();
    const double x = g.x(j);
    if (x < a) {
      r.left += w;
    } else if (x > b) {
      r.right += w;
    } else {
      r.middle += w;
    }
  }
  return r;
}

double interpolate(double t, const std::vector<FlowSample>& h, double oracle::Observables::*field) {
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (h[k].obs.time >= t) {
      const double t0 = h[k - 1].obs.time, t1 = h[k].obs.time;
      const double u = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
      return (1.0 - u) * h[k - 1].obs.*field + u * h[k].obs.*field;
    }
  }
  return h.back().obs.*field;
}

void locate_turning(TunnelingResult& r, double t0) {
  const auto& h = r.history;
  // Only trust <x> while essentially nothing has been absorbed.
  std::size_t usable = 0;
  while (usable < h.size() && h[usable].obs.norm_squared > 0.999) ++usable;
  if (usable == 0) return;

  double t_turn = -1.0;
  for (std::size_t k = 1; k < usable; ++k) {
    if (h[k - 1].obs.mean_x < r.turning_a && h[k].obs.mean_x >= r.turning_a) {
      const double x0 = h[k - 1].obs.mean_x, x1 = h[k].obs.mean_x;
      const double u = (r.turning_a - x0) / (x1 - x0);
      t_turn = h[k - 1].obs.time + u * (h[k].obs.time - h[k - 1].obs.time);
      break;
    }
  }
  if (t_turn < 0.0) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < usable; ++k) {
      if (h[k].obs.mean_x > h[best].obs.mean_x) best = k;
    }
    t_turn = h[best].obs.time;
    if (best > 0 && best + 1 < usable) {
      const double ym = h[best - 1].obs.mean_x, y0 = h[best].obs.mean_x,
                   yp = h[best + 1].obs.mean_x;
      const double denom = ym - 2.0 * y0 + yp;
      const double step = h[best + 1].obs.time - h[best].obs.time;
      if (denom < 0.0) t_turn += 0.5 * step * (ym - yp) / denom;
    }
  }
  r.t_turning = t_turn - t0;
  r.sigma_at_turning = interpolate(t_turn, h, &oracle::Observables::width);
}

TunnelingResult run_from(const WaveFunction& launch, const GaussianSpec& nominal,
                         const BarrierSpec& barrier, const TunnelingRun& run,
                         const UnitSystem& units) {
  run.validate();
  barrier.validate();
  const Potential V = barrier.potential();

  TunnelingResult r;
  r.energy = nominal.p0 * nominal.p0 / (2.0 * units.mass()) + V(nominal.x0);
  const auto tp = r.energy > barrier.peak ? TurningPoints{barrier.x_peak, barrier.x_peak}
                                          : turning_points(V, r.energy);
  r.turning_a = tp.a;
  r.turning_b = tp.b;
  r.d_prime = barrier.x_peak - tp.a;
  const double travel =
      nominal.p0 > 0.0 ? std::max(0.0, barrier.x_start - nominal.x0) * units.mass() / nominal.p0
                       : 0.0;
  r.t_turning_predicted = r.energy > barrier.peak
                              ? std::numeric_limits<double>::quiet_NaN()
                              : travel + nominal.p0 / barrier.front_slope();

  oracle::SplitStepPropagator prop(launch, V, run.solver.dt, run.solver.absorber, units);
  const double t0 = prop.time();
  bool interacted = false;
  std::size_t quiet = 0;

  const auto record = [&]() {
    const WaveFunction psi = prop.state();
    const Regions regions = split_norm(psi, tp.a, tp.b);
    FlowSample s;
    s.obs = oracle::observe(psi, units);
    s.reflected = regions.left + prop.absorbed_left();
    s.transmitted = regions.right + prop.absorbed_right();
    s.residual = regions.middle;
    const Regions support = split_norm(psi, barrier.x_start, barrier.x_end());
    if (support.middle > kInteractionThreshold) interacted = true;
    if (!r.history.empty() && interacted && support.middle < kDepartureThreshold) {
      const auto& prev = r.history.back();
      const bool still = std::abs(s.transmitted - prev.transmitted) < run.stationarity_tol &&
                         std::abs(s.reflected - prev.reflected) < run.stationarity_tol;
      quiet = still ? quiet + 1 : 0;
    }
    r.history.push_back(s);
  };

  record();
  r.sigma_launch = r.history.front().obs.width;
  std::size_t done = 0;
  while (done < run.solver.n_steps && quiet < run.stationary_snapshots) {
    const std::size_t chunk = std::min(run.solver.record_every, run.solver.n_steps - done);
    prop.step(chunk);
    done += chunk;
    record();
  }

  const auto& last = r.history.back();
  r.transmitted = last.transmitted;
  r.reflected = last.reflected;
  r.residual = last.residual;
  r.absorbed_left = prop.absorbed_left();
  r.absorbed_right = prop.absorbed_right();
  r.t_final = prop.time() - t0;
  r.stationary = quiet >= run.stationary_snapshots;
  locate_turning(r, t0);

  if (!r.stationary) {
    std::ostringstream msg;
    msg << "tunneling: transmission not stationary after " << done << " steps (t = "
        << r.t_final << "); last T = " << r.transmitted << ", R = " << r.reflected;
    throw TunnelingTimeout(msg.str(), std::move(r));
  }
  return r;
}

}  // namespace

void TunnelingRun::validate() const {
  solver.validate();
  if (!solver.absorber) throw ValidationError("tunneling: an absorber is required");
  if (solver.n_steps == 0) throw ValidationError("tunneling: step budget must be positive");
  if (!(stationarity_tol > 0.0)) throw ValidationError("tunneling: stationarity_tol must be > 0");
  if (stationary_snapshots == 0) {
    throw ValidationError("tunneling: stationary_snapshots must be positive");
  }
}

WaveFunction delayed_launch(const GaussianSpec& packet, double delay, const SpatialGrid& grid,
                            const UnitSystem& units) {
  if (!(delay >= 0.0) || !std::isfinite(delay)) {
    throw ValidationError("tunneling: delay must be finite and non-negative");
  }
  WaveFunction psi = sample_gaussian(packet, grid, units);
  if (delay == 0.0) return psi;
  const double v = packet.p0 / units.mass();
  const double c = units.hbar() / (2.0 * units.mass());
  auto amps = spectral_multiply(psi.amplitudes(), grid, [&](double k) {
    return std::polar(1.0, -c * k * k * delay + k * v * delay);
  });
  WaveFunction out(grid, std::move(amps), 0.0);
  check_boundary_contamination(out, "delayed launch");
  return out;
}

TunnelingResult run_tunneling(const GaussianSpec& packet, const BarrierSpec& barrier,
                              const SpatialGrid& grid, const TunnelingRun& run,
                              const UnitSystem& units) {
  return run_from(sample_gaussian(packet, grid, units), packet, barrier, run, units);
}

TunnelingResult run_tunneling_delayed(const GaussianSpec& packet, double delay,
                                      const BarrierSpec& barrier, const SpatialGrid& grid,
                                      const TunnelingRun& run, const UnitSystem& units) {
  return run_from(delayed_launch(packet, delay, grid, units), packet, barrier, run, units);
}

WidthScan width_scan(const GaussianSpec& base, const std::vector<double>& values, ScanMode mode,
                     const BarrierSpec& barrier, const SpatialGrid& grid,
                     const TunnelingRun& run, const UnitSystem& units, double tolerance) {
  if (values.empty()) throw ValidationError("width_scan: no values to scan");
  WidthScan scan;
  scan.mode = mode;
  scan.tolerance = tolerance;

  std::vector<std::future<TunnelingResult>> jobs;
  jobs.reserve(values.size());
  for (double value : values) {
    jobs.push_back(std::async(std::launch::async, [=, &barrier, &grid, &run, &units]() {
      if (mode == ScanMode::delay) {
        return run_tunneling_delayed(base, value, barrier, grid, run, units);
      }
      GaussianSpec spec = base;
      spec.sigma = value;
      return run_tunneling(spec, barrier, grid, run, units);
    }));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    scan.entries.push_back({values[i], jobs[i].get()});
  }

  std::stable_sort(scan.entries.begin(), scan.entries.end(), [](const auto& l, const auto& r) {
    return l.result.sigma_at_turning < r.result.sigma_at_turning;
  });
  for (std::size_t i = 0; i + 1 < scan.entries.size(); ++i) {
    if (scan.entries[i + 1].result.transmitted <
        scan.entries[i].result.transmitted - tolerance) {
      scan.violations.emplace_back(i, i + 1);
    }
  }
  return scan;
}

}  // namespace qlinear::tunneling
