#pragma once

#include <array>
#include <vector>

#include "qlinear/core/wavefunction.hpp"

namespace qlinear::devices {

enum class Axis { x, z };

const char* to_string(Axis a) noexcept;

/// Spin-1/2 amplitudes on the +/- eigenstates of `basis`.
/// |S_z,+-> = (|S_x,+> +- |S_x,->)/sqrt(2), and the same map sends x to z.
struct SpinState {
  Complex plus{1.0, 0.0};
  Complex minus{0.0, 0.0};
  Axis basis = Axis::z;

  static SpinState z(int sign);
  static SpinState x(int sign);

  double norm_squared() const noexcept { return std::norm(plus) + std::norm(minus); }
  SpinState in_basis(Axis target) const;
};

/// <a|b>, after bringing both to the basis of `a`.
Complex overlap(const SpinState& a, const SpinState& b);
/// |<a|b>|^2
double fidelity(const SpinState& a, const SpinState& b);
/// The state orthogonal to `s` (unique up to phase).
SpinState orthogonal(const SpinState& s);

/// Two-component wave-function: spatial amplitudes of the + and - spin
/// components along `basis`.
class SpinorPacket {
 public:
  SpinorPacket(WaveFunction plus, WaveFunction minus, Axis basis);
  /// psi (x) spin
  static SpinorPacket product(const WaveFunction& psi, const SpinState& spin);

  const WaveFunction& plus() const noexcept { return plus_; }
  const WaveFunction& minus() const noexcept { return minus_; }
  Axis basis() const noexcept { return basis_; }

  double norm_squared() const noexcept;
  SpinorPacket in_basis(Axis target) const;
  /// Reduced spin density matrix in this packet's basis, entries
  /// <s|rho|s'> = <psi_s'|psi_s>.
  std::array<Complex, 4> reduced_density() const;

 private:
  WaveFunction plus_;
  WaveFunction minus_;
  Axis basis_;
};

struct MomentumBranch {
  double momentum = 0.0;
  double probability = 0.0;
};

/// rho = sum_{a,b} rho_ab |p_a><p_b| (x) |S_x,a><S_x,b|, a, b in {+, -}:
/// a 2x2 spin matrix in the x basis with one transverse momentum label per
/// x-branch. Before any splitting both labels are equal.
class SpinDensity {
 public:
  SpinDensity(std::array<Complex, 4> rho_x, std::array<double, 2> momenta);

  /// I/2 at transverse momentum p.
  static SpinDensity unpolarized(double p = 0.0);
  static SpinDensity pure(const SpinState& s, double p = 0.0);

  /// Row-major {++, +-, -+, --} in the x basis.
  const std::array<Complex, 4>& matrix() const noexcept { return rho_; }
  const std::array<double, 2>& momenta() const noexcept { return p_; }

  double trace() const noexcept { return rho_[0].real() + rho_[3].real(); }
  /// max |rho - rho^dagger|
  double hermiticity_defect() const noexcept;
  /// Ascending.
  std::array<double, 2> eigenvalues() const noexcept;
  /// Diagonal weights grouped by momentum label, ascending in momentum.
  std::vector<MomentumBranch> branches() const;

 private:
  std::array<Complex, 4> rho_;
  std::array<double, 2> p_;
};

}  // namespace qlinear::devices
