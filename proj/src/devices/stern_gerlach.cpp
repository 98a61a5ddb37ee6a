#include "qlinear/devices/stern_gerlach.hpp"

#include <cmath>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/analytic/phases.hpp"
#include "qlinear/core/errors.hpp"

namespace qlinear::devices {

void SgSpec::validate() const {
  if (!std::isfinite(B0) || !std::isfinite(moment) || !std::isfinite(duration)) {
    throw ValidationError("sg: parameters must be finite");
  }
  if (!(moment > 0.0)) throw ValidationError("sg: moment must be positive");
  if (duration < 0.0) throw ValidationError("sg: duration must be non-negative");
  if (axis != 1 && axis != -1) throw ValidationError("sg: axis must be +1 or -1");
}

SpinorPacket sg_apply(const SpinorPacket& psi, const SgSpec& sg, const UnitSystem& units) {
  sg.validate();
  const SpinorPacket x = psi.in_basis(Axis::x);
  auto plus = analytic::linear_evolve(x.plus(), sg.branch_slope(+1), sg.duration, units);
  auto minus = analytic::linear_evolve(x.minus(), sg.branch_slope(-1), sg.duration, units);
  return {std::move(plus.psi), std::move(minus.psi), Axis::x};
}

SpinDensity sg_apply(const SpinDensity& rho, const SgSpec& sg, const UnitSystem& units) {
  sg.validate();
  const auto& p = rho.momenta();
  const auto plus = analytic::plane_wave_phase(p[0], sg.branch_slope(+1), sg.duration, units);
  const auto minus = analytic::plane_wave_phase(p[1], sg.branch_slope(-1), sg.duration, units);
  const Complex coherence = std::polar(1.0, plus.total() - minus.total());
  auto m = rho.matrix();
  m[1] *= coherence;
  m[2] *= std::conj(coherence);
  return SpinDensity(m, {plus.p_out, minus.p_out});
}

}  // namespace qlinear::devices
