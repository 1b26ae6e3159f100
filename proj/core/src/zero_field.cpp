#include "pendular/zero_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pendular/errors.hpp"

namespace pendular {

ZetaCoupling::ZetaCoupling(double zeta) : zeta_(zeta) {
  if (!std::isfinite(zeta) || zeta < 0.0) {
    throw InvalidArgument("zeta must be finite and non-negative, got " + std::to_string(zeta));
  }
}

void ThermalWeights::validate() const {
  double total = 0.0;
  for (const double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("population outside [0, 1]");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("populations do not sum to 1");
}

double alpha_plus(ZetaCoupling zeta) {
  const double t = zeta.value();
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + std::hypot(1.0, t)) / t;
}

double alpha_minus(ZetaCoupling zeta) {
  const double t = zeta.value();
  return -t / (1.0 + std::hypot(1.0, t));
}

namespace {

struct MixingAmplitudes {
  double s;       // sqrt(1 + zeta^2)
  double small;   // zeta / N
  double large;   // (1 + s) / N
};

// N = sqrt(zeta^2 + (1 + s)^2) normalizes both |00>/|11> mixtures, so
//   1/sqrt(1+a+^2) = zeta/N,  a+/sqrt(1+a+^2) = (1+s)/N,
//   1/sqrt(1+a-^2) = (1+s)/N, a-/sqrt(1+a-^2) = -zeta/N.
MixingAmplitudes mixing(double zeta) {
  const double s = std::hypot(1.0, zeta);
  const double n = std::hypot(zeta, 1.0 + s);
  return {s, zeta / n, (1.0 + s) / n};
}

}  // namespace

std::array<AnalyticLevel, 4> analytic_eigensystem(ZetaCoupling zeta) {
  const double t = zeta.value();
  const auto m = mixing(t);
  const double r = 1.0 / std::numbers::sqrt2;
  // 2 a / (1 + a^2) for both a+ and |a-| reduces to zeta / s.
  const double c_outer = t / m.s;

  std::array<AnalyticLevel, 4> out;
  out[0].energy = 2.0 - 2.0 * m.s;
  out[0].vector << -m.large, 0.0, 0.0, m.small;
  out[0].concurrence = c_outer;

  out[1].energy = 2.0 * (1.0 - t);
  out[1].vector << 0.0, -r, r, 0.0;
  out[1].concurrence = 1.0;

  out[2].energy = 2.0 * (1.0 + t);
  out[2].vector << 0.0, r, r, 0.0;
  out[2].concurrence = 1.0;

  out[3].energy = 2.0 + 2.0 * m.s;
  out[3].vector << m.small, 0.0, 0.0, m.large;
  out[3].concurrence = c_outer;
  return out;
}

ThermalWeights analytic_populations(ZetaCoupling zeta, ReducedTemperature z) {
  const auto levels = analytic_eigensystem(zeta);
  std::array<double, 4> energies{};
  for (std::size_t i = 0; i < 4; ++i) energies[i] = levels[i].energy;
  ThermalWeights w;
  w.p = boltzmann_populations(energies, z);
  return w;
}

Matrix4 ThermalBlocks::matrix() const {
  Matrix4 m;
  m << a, 0.0, 0.0, g,
      0.0, b, d, 0.0,
      0.0, d, b, 0.0,
      g, 0.0, 0.0, c;
  return m;
}

ThermalBlocks analytic_thermal_blocks(ZetaCoupling zeta, ReducedTemperature z) {
  const auto w = analytic_populations(zeta, z);
  const auto m = mixing(zeta.value());
  const double p1 = w.p[0], p2 = w.p[1], p3 = w.p[2], p4 = w.p[3];

  // a+^2/(1+a+^2) = large^2, 1/(1+a+^2) = small^2, a+/(1+a+^2) = large*small;
  // the a- terms swap large and small and flip the sign of the cross term.
  const double ls = m.large * m.small;
  ThermalBlocks t;
  t.a = m.large * m.large * p1 + m.small * m.small * p4;
  t.b = 0.5 * (p2 + p3);
  t.c = m.small * m.small * p1 + m.large * m.large * p4;
  t.d = 0.5 * (p3 - p2);
  t.g = -ls * p1 + ls * p4;
  return t;
}

double analytic_thermal_concurrence(ZetaCoupling zeta, ReducedTemperature z) {
  const auto t = analytic_thermal_blocks(zeta, z);
  return std::max(0.0, -2.0 * (t.b + t.g));
}

double analytic_concurrence_expansion(ZetaCoupling zeta, ReducedTemperature z) {
  const auto levels = analytic_eigensystem(zeta);
  const auto w = analytic_populations(zeta, z);
  return levels[0].concurrence * w.p[0] - levels[1].concurrence * w.p[1] -
         levels[2].concurrence * w.p[2] - levels[3].concurrence * w.p[3];
}

double approx_critical_coupling(ReducedTemperature z, double omega_over_b) {
  const double t = z.value();
  if (t == 0.0) return 0.0;
  const double base = -2.0 / t;
  const double u = omega_over_b / (3.0 * t);
  // 12 e^base cosh(u) written to avoid overflow of cosh for large u.
  return 6.0 * (std::exp(base + u) + std::exp(base - u));
}

}  // namespace pendular
