#pragma once

// Two pendular dipoles coupled by the azimuthally averaged dipole-dipole
// interaction y (1 - 3 cos^2 alpha) cos(theta1) cos(theta2), represented in
// the product basis {|00>, |01>, |10>, |11>} (first digit = site 1).

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "pendular/pendular_core.hpp"

namespace pendular {

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

/// Field tilt at which 1 - 3 cos^2(alpha) vanishes.
inline const double kMagicAngle = std::acos(1.0 / std::numbers::sqrt3);

struct PairConfig {
  ReducedField x;
  ReducedField x_prime;
  /// Omega/B = mu^2 / (r^3 B), non-negative.
  double y = 0.0;
  /// Angle (radians) between the inter-dipole axis and the field.
  double alpha = std::numbers::pi / 2.0;

  static PairConfig symmetric(double x, double y, double alpha = std::numbers::pi / 2.0) {
    return PairConfig{ReducedField{x}, ReducedField{x}, y, alpha};
  }

  [[nodiscard]] bool is_symmetric() const noexcept { return x.value() == x_prime.value(); }
  /// y (1 - 3 cos^2 alpha).
  [[nodiscard]] double effective_coupling() const;
  void validate() const;
};

/// Single-site data for both sites, computed once and reused across sweeps
/// of y or alpha.
struct PairSites {
  SiteProperties site;
  SiteProperties site_prime;

  static PairSites solve(const PairConfig& cfg, const BasisTruncation& trunc = {});
};

struct PairEigensystem {
  std::array<double, 4> energies{};
  /// Column k is the eigenvector of energies[k].
  Matrix4 vectors = Matrix4::Zero();

  [[nodiscard]] Vector4 vector(int k) const { return vectors.col(k); }
};

/// Product-basis index of |a b>.
constexpr int product_index(int a, int b) noexcept { return 2 * a + b; }

Matrix4 build_pair_hamiltonian(const PairSites& sites, double effective_coupling);
Matrix4 build_pair_hamiltonian(const PairConfig& cfg, const BasisTruncation& trunc = {});

/// Columns: (|11>+|00>)/r2, (|11>-|00>)/r2, (|10>+|01>)/r2, (|10>-|01>)/r2.
Matrix4 bell_basis();

/// Hamiltonian in the Bell basis assembled from the closed-form blocks.
/// Throws AsymmetricSites unless x == x_prime.
Matrix4 bell_basis_hamiltonian(const PairConfig& cfg, const BasisTruncation& trunc = {});
Matrix4 bell_basis_hamiltonian(const SiteProperties& site, double effective_coupling);

/// Ascending eigensystem. Each vector has its largest-magnitude component
/// positive. Exactly degenerate levels are ordered by <v|diag(0,1,2,3)|v>,
/// then antisymmetric before symmetric under site exchange; for symmetric
/// sites the Bell-basis block structure is used so the antisymmetric Bell
/// vector comes out exactly.
PairEigensystem diagonalize_pair(const PairSites& sites, double effective_coupling,
                                 bool symmetric_sites);
PairEigensystem diagonalize_pair(const PairConfig& cfg, const BasisTruncation& trunc = {});

struct AzimuthalAverage {
  double numeric = 0.0;
  double closed_form = 0.0;
};

/// Averages cos(beta) - 3 cos(gamma1) cos(gamma2) over both dipole azimuths
/// on a grid x grid uniform mesh and returns it next to
/// (1 - 3 cos^2 alpha) cos(theta1) cos(theta2).
AzimuthalAverage verify_azimuthal_average(double theta1, double theta2, double alpha,
                                          int grid = 256);

}  // namespace pendular
