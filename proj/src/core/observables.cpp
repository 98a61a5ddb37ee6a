#include "qlinear/core/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qlinear/core/diagnostics.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/core/fft.hpp"

namespace qlinear {
namespace {

void require_normalized(const WaveFunction& psi, const char* what) {
  const double n2 = psi.norm_squared();
  if (std::abs(n2 - 1.0) >= kNormalizationTolerance) {
    throw NormalizationError(std::string(what) + ": state is not normalized (norm^2 = " +
                                 std::to_string(n2) + ")",
                             n2);
  }
}

struct PositionStats {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

PositionStats position_stats(const WaveFunction& psi) {
  const auto& g = psi.grid();
  double w = 0.0, s1 = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double rho = std::norm(psi[j]);
    w += rho;
    s1 += rho * g.x(j);
  }
  const double mean = s1 / w;
  double s2 = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double u = g.x(j) - mean;
    s2 += std::norm(psi[j]) * u * u;
  }
  return {w * g.dx(), mean, s2 / w};
}

// Momentum statistics straight from the DFT; the bins carry p = hbar k.
PositionStats momentum_stats(const WaveFunction& psi, double hbar) {
  std::vector<Complex> c(psi.amplitudes().begin(), psi.amplitudes().end());
  fft::forward(c);
  const auto& g = psi.grid();
  double w = 0.0, s1 = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double rho = std::norm(c[k]);
    w += rho;
    s1 += rho * g.wavenumber(k);
  }
  const double mean = s1 / w;
  double s2 = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double u = g.wavenumber(k) - mean;
    s2 += std::norm(c[k]) * u * u;
  }
  return {0.0, hbar * mean, hbar * hbar * s2 / w};
}

PositionStats momentum_stats(const MomentumWaveFunction& phi) {
  double w = 0.0, s1 = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double rho = std::norm(phi[m]);
    w += rho;
    s1 += rho * phi.momentum(m);
  }
  const double mean = s1 / w;
  double s2 = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double u = phi.momentum(m) - mean;
    s2 += std::norm(phi[m]) * u * u;
  }
  return {w * phi.dp(), mean, s2 / w};
}

}  // namespace

double mean_position(const WaveFunction& psi) {
  require_normalized(psi, "mean_position");
  return position_stats(psi).mean;
}

double mean_momentum(const WaveFunction& psi, const UnitSystem& units) {
  require_normalized(psi, "mean_momentum");
  return momentum_stats(psi, units.hbar()).mean;
}

double mean_momentum(const MomentumWaveFunction& phi) {
  const auto st = momentum_stats(phi);
  if (std::abs(st.weight - 1.0) >= kNormalizationTolerance) {
    throw NormalizationError("mean_momentum: state is not normalized", st.weight);
  }
  return st.mean;
}

double rms_width(const WaveFunction& psi) {
  require_normalized(psi, "rms_width");
  return std::sqrt(position_stats(psi).variance);
}

double spatial_width(const WaveFunction& psi) { return std::numbers::sqrt2 * rms_width(psi); }

double momentum_width(const WaveFunction& psi, const UnitSystem& units) {
  require_normalized(psi, "momentum_width");
  return std::numbers::sqrt2 * std::sqrt(momentum_stats(psi, units.hbar()).variance);
}

double momentum_width(const MomentumWaveFunction& phi) {
  const auto st = momentum_stats(phi);
  if (std::abs(st.weight - 1.0) >= kNormalizationTolerance) {
    throw NormalizationError("momentum_width: state is not normalized", st.weight);
  }
  return std::numbers::sqrt2 * std::sqrt(st.variance);
}

double Moments::width() const { return std::numbers::sqrt2 * rms_x; }

Moments moments(const WaveFunction& psi, const UnitSystem& units) {
  const auto x = position_stats(psi);
  if (!(x.weight > 0.0)) throw NormalizationError("moments: state has zero norm", x.weight);
  const auto p = momentum_stats(psi, units.hbar());
  return {x.weight, x.mean, p.mean, std::sqrt(x.variance), std::sqrt(p.variance)};
}

double edge_norm_fraction(const WaveFunction& psi, double edge_fraction) {
  const std::size_t n = psi.size();
  const auto edge = static_cast<std::size_t>(std::ceil(edge_fraction * static_cast<double>(n)));
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = std::norm(psi[j]);
    total += rho;
    if (j < edge || j >= n - edge) outer += rho;
  }
  return total > 0.0 ? outer / total : 0.0;
}

bool check_boundary_contamination(const WaveFunction& psi, std::string_view context,
                                  double threshold) {
  const double f = edge_norm_fraction(psi, 0.05);
  if (f > threshold) {
    std::ostringstream msg;
    msg << context << ": boundary contamination, " << f
        << " of the norm lies in the outer 5% of the grid";
    warn(msg.str());
    return true;
  }
  return false;
}

}  // namespace qlinear
