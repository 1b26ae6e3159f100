#pragma once

// Closed-form solution of the two-dipole problem with the field switched
// off (x = 0). The pair then reduces to an Ising-like model in the basis
// {Y00, Y10} and everything is a function of zeta = y / 6. Used as an
// oracle for the numerical pipeline.

#include <array>

#include "pendular/dipole_pair.hpp"
#include "pendular/entanglement.hpp"

namespace pendular {

/// zeta = Omega / 6B, non-negative.
class ZetaCoupling {
 public:
  constexpr ZetaCoupling() = default;
  explicit ZetaCoupling(double zeta);

  static ZetaCoupling from_y(double y) { return ZetaCoupling(y / 6.0); }

  [[nodiscard]] constexpr double value() const noexcept { return zeta_; }

 private:
  double zeta_ = 0.0;
};

/// Boltzmann populations P1..P4 of the zero-field levels.
struct ThermalWeights {
  std::array<double, 4> p{};

  /// Throws InvalidArgument unless the weights lie in [0, 1] and sum to 1.
  void validate() const;
};

struct AnalyticLevel {
  double energy = 0.0;
  Vector4 vector = Vector4::Zero();
  double concurrence = 0.0;
};

/// alpha_plus = (1 + sqrt(1 + zeta^2)) / zeta; infinite at zeta = 0.
double alpha_plus(ZetaCoupling zeta);
/// alpha_minus = (1 - sqrt(1 + zeta^2)) / zeta, evaluated without cancellation.
double alpha_minus(ZetaCoupling zeta);

/// Levels in ascending order:
///   E1 = 2 - 2 sqrt(1 + zeta^2), (|11> - a+ |00>) / sqrt(1 + a+^2)
///   E2 = 2 (1 - zeta),           (|10> - |01>) / sqrt(2)
///   E3 = 2 (1 + zeta),           (|10> + |01>) / sqrt(2)
///   E4 = 2 + 2 sqrt(1 + zeta^2), (|11> - a- |00>) / sqrt(1 + a-^2)
/// At zeta = 0 the limits are taken explicitly (level 1 is -|00>).
std::array<AnalyticLevel, 4> analytic_eigensystem(ZetaCoupling zeta);

ThermalWeights analytic_populations(ZetaCoupling zeta, ReducedTemperature z);

/// Nonzero entries of the X-shaped thermal density matrix:
///   [[a 0 0 g] [0 b d 0] [0 d b 0] [g 0 0 c]].
struct ThermalBlocks {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double g = 0.0;

  [[nodiscard]] Matrix4 matrix() const;
};

ThermalBlocks analytic_thermal_blocks(ZetaCoupling zeta, ReducedTemperature z);

/// max{0, -2 (b + g)}.
double analytic_thermal_concurrence(ZetaCoupling zeta, ReducedTemperature z);

/// C(1) P1 - C(2) P2 - C(3) P3 - C(4) P4, not clamped.
double analytic_concurrence_expansion(ZetaCoupling zeta, ReducedTemperature z);

/// Low-temperature, weak-coupling onset estimate 12 exp(-2/z) cosh(y / 3z).
/// Returns 0 at z = 0.
double approx_critical_coupling(ReducedTemperature z, double omega_over_b);

}  // namespace pendular
