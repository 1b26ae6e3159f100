#pragma once

// Wootters concurrence for the two-dipole system: pure eigenstates, thermal
// (Boltzmann) mixtures, the weak-coupling slope K(x) and the critical
// coupling below which the thermal concurrence vanishes.

#include <array>

#include "pendular/dipole_pair.hpp"

namespace pendular {

/// Real symmetric 4x4 density matrix over {|00>, |01>, |10>, |11>}.
class DensityMatrix4 {
 public:
  /// Validates symmetry, unit trace (1e-12) and eigenvalues >= -1e-12.
  explicit DensityMatrix4(const Matrix4& elements);

  static DensityMatrix4 pure(const Vector4& state);
  static DensityMatrix4 maximally_mixed();

  [[nodiscard]] const Matrix4& elements() const noexcept { return rho_; }
  [[nodiscard]] double operator()(int i, int j) const { return rho_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix4(const Matrix4& elements, Unchecked) : rho_(elements) {}

  Matrix4 rho_;

  friend DensityMatrix4 spin_flip(const DensityMatrix4& rho);
};

/// Non-negative temperature ratio z = k_B T / B; z = 0 is the ground-state limit.
class ReducedTemperature {
 public:
  constexpr ReducedTemperature() = default;
  explicit ReducedTemperature(double z);

  [[nodiscard]] constexpr double value() const noexcept { return z_; }

 private:
  double z_ = 0.0;
};

/// (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
DensityMatrix4 spin_flip(const DensityMatrix4& rho);

/// Eigenvalues of rho * spin_flip(rho), descending, clamped at zero.
std::array<double, 4> concurrence_eigenvalues(const DensityMatrix4& rho);

/// sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) without the clamp at zero.
/// Continuous in rho; its sign change marks the entanglement onset.
double concurrence_margin(const DensityMatrix4& rho);

/// max{0, concurrence_margin(rho)}.
double concurrence(const DensityMatrix4& rho);

/// Closed form 2|c00 c11 - c01 c10| for a normalized real pure state.
double pure_state_concurrence(const Vector4& state);

/// Entanglement of formation as a function of the concurrence.
double entanglement_of_formation(double concurrence);

std::array<double, 4> eigenstate_concurrences(const PairEigensystem& eig);
std::array<double, 4> eigenstate_concurrences(const PairConfig& cfg,
                                              const BasisTruncation& trunc = {});

/// Boltzmann weights of the four levels; z = 0 puts equal weight on the
/// exactly degenerate ground manifold.
std::array<double, 4> boltzmann_populations(const std::array<double, 4>& energies,
                                            ReducedTemperature z);

DensityMatrix4 thermal_density_matrix(const PairEigensystem& eig, ReducedTemperature z);
DensityMatrix4 thermal_density_matrix(const PairConfig& cfg, ReducedTemperature z,
                                      const BasisTruncation& trunc = {});

double thermal_concurrence(const PairConfig& cfg, ReducedTemperature z,
                           const BasisTruncation& trunc = {});

/// Coupling used to extract K(x), and the cross-check point.
inline constexpr double kSlopeProbe = 1e-3;
inline constexpr double kSlopeCheck = 2e-3;
/// Upper end of the regime where the ground-state concurrence is linear in y.
inline constexpr double kLinearRegimeLimit = 0.04;

/// K(x) = C12(y = 1e-3) / 1e-3 for symmetric sites at alpha = 90 deg.
/// Throws LinearityCheckFailed if the y = 2e-3 slope differs by more than 1%.
double weak_coupling_slope(ReducedField x, const BasisTruncation& trunc = {});
/// Same, on precomputed site data.
double weak_coupling_slope(const SiteProperties& site);

/// sqrt(K(x) K(x')) y. Throws OutOfLinearRegime for y >= 0.04.
double weak_coupling_concurrence(ReducedField x, ReducedField x_prime, double y,
                                 const BasisTruncation& trunc = {});

/// Smallest y in [0, 1] with non-zero thermal concurrence, to 1e-7.
/// Returns 0 if already entangled at y = 1e-7; throws NoOnsetFound if
/// the concurrence is zero on the whole bracket.
double critical_coupling(ReducedField x, ReducedTemperature z, const BasisTruncation& trunc = {});
double critical_coupling(const SiteProperties& site, ReducedTemperature z);

}  // namespace pendular
