#include "qlinear/core/potential.hpp"

#include <algorithm>
#include <cmath>

#include "qlinear/core/errors.hpp"

namespace qlinear {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interpolate(const std::vector<std::pair<double, double>>& bp, double x) {
  if (x <= bp.front().first) return bp.front().second;
  if (x >= bp.back().first) return bp.back().second;
  const auto it = std::upper_bound(bp.begin(), bp.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
  const auto& [x1, v1] = *(it - 1);
  const auto& [x2, v2] = *it;
  return v1 + (v2 - v1) * ((x - x1) / (x2 - x1));
}

}  // namespace

Potential Potential::linear(double slope) {
  if (!std::isfinite(slope)) throw ValidationError("linear potential: slope must be finite");
  return Potential(LinearPotential{slope});
}

Potential Potential::piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.size() < 2) {
    throw ValidationError("piecewise-linear potential: need at least two breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& [x, v] = breakpoints[i];
    if (!std::isfinite(x) || !std::isfinite(v)) {
      throw ValidationError("piecewise-linear potential: non-finite breakpoint");
    }
    if (i > 0 && !(x > breakpoints[i - 1].first)) {
      throw ValidationError("piecewise-linear potential: breakpoints must be strictly increasing");
    }
  }
  return Potential(PiecewiseLinearPotential{std::move(breakpoints)});
}

Potential Potential::sampled(SpatialGrid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw ValidationError("sampled potential: value count does not match grid");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("sampled potential: non-finite value");
  }
  return Potential(SampledPotential{grid, std::move(values)});
}

double Potential::operator()(double x) const {
  return std::visit(
      overloaded{
          [](const FreePotential&) { return 0.0; },
          [x](const LinearPotential& p) { return p.slope * x; },
          [x](const PiecewiseLinearPotential& p) { return interpolate(p.breakpoints, x); },
          [x](const SampledPotential& p) {
            const auto& g = p.grid;
            const double s = (x - g.x_min()) / g.dx();
            if (s <= 0.0) return p.values.front();
            const auto last = static_cast<double>(g.size() - 1);
            if (s >= last) return p.values.back();
            const auto j = static_cast<std::size_t>(s);
            const double f = s - static_cast<double>(j);
            return p.values[j] + f * (p.values[j + 1] - p.values[j]);
          },
      },
      v_);
}

std::vector<double> Potential::sample(const SpatialGrid& grid) const {
  if (const auto* s = std::get_if<SampledPotential>(&v_); s && s->grid == grid) {
    return s->values;
  }
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*this)(grid.x(j));
  return out;
}

std::vector<double> Potential::knots() const {
  std::vector<double> out;
  if (const auto* p = std::get_if<PiecewiseLinearPotential>(&v_)) {
    for (const auto& bp : p->breakpoints) out.push_back(bp.first);
  } else if (const auto* s = std::get_if<SampledPotential>(&v_)) {
    out = s->grid.positions();
  }
  return out;
}

}  // namespace qlinear
