#pragma once

// Single-molecule pendular eigenproblem: a linear rigid rotor in a static
// field, H/B = J^2 - x cos(theta), solved in the M = 0 spherical-harmonic
// basis Y_{j,0}, j = 0..j_max. All energies are in units of the rotational
// constant B.

#include <span>
#include <vector>

#include <Eigen/Core>

namespace pendular {

/// Reduced field strength x = mu*E/B. Finite and non-negative.
class ReducedField {
 public:
  constexpr ReducedField() = default;
  explicit ReducedField(double x);

  [[nodiscard]] constexpr double value() const noexcept { return x_; }

 private:
  double x_ = 0.0;
};

/// Size of the Y_{j,0} basis and the tolerance used to certify that it is
/// large enough.
struct BasisTruncation {
  int j_max = 20;
  /// Largest accepted change of W0 and W1 (units of B) when j_max -> j_max + 4.
  double convergence_tol = 1e-10;
  /// Upper bound for the adaptive doubling of j_max.
  int j_cap = 60;

  void validate() const;
};

struct PendularState {
  double energy = 0.0;
  /// Real coefficients c_j of Y_{j,0}, j = 0..j_max. Unit norm; the
  /// largest-magnitude entry is positive.
  std::vector<double> coefficients;
  /// Field-free correlate J~ (M = 0 levels never cross, so this is the
  /// position in the ascending energy order).
  int label = 0;
};

/// Every eigenpair of the certified basis, ascending in energy.
struct PendularSpectrum {
  int j_max = 0;
  std::vector<PendularState> states;

  [[nodiscard]] const PendularState& ground() const { return states.at(0); }
  [[nodiscard]] const PendularState& first_excited() const { return states.at(1); }
};

/// Orientation-cosine matrix elements between the qubit states |0>, |1>.
struct CosineElements {
  double c0 = 0.0;  ///< <0|cos|0>
  double cx = 0.0;  ///< <0|cos|1>
  double c1 = 0.0;  ///< <1|cos|1>
};

/// What the pair Hamiltonian needs from one site.
struct SiteProperties {
  double x = 0.0;
  double w0 = 0.0;
  double w1 = 0.0;
  CosineElements cos;

  [[nodiscard]] double gap() const noexcept { return w1 - w0; }
};

/// Symmetric tridiagonal matrix stored as its two bands.
struct TridiagonalMatrix {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  [[nodiscard]] std::size_t dimension() const noexcept { return diagonal.size(); }
  [[nodiscard]] Eigen::MatrixXd dense() const;
};

/// <j,0|cos(theta)|jp,0>; nonzero only for |j - jp| = 1.
double cosine_matrix_element(int j, int jp);

TridiagonalMatrix build_pendular_hamiltonian(ReducedField x, int j_max);
inline TridiagonalMatrix build_pendular_hamiltonian(ReducedField x, const BasisTruncation& trunc) {
  return build_pendular_hamiltonian(x, trunc.j_max);
}

/// Diagonalizes at a fixed basis size, with no convergence check.
PendularSpectrum solve_pendular_fixed(ReducedField x, int j_max);

/// Diagonalizes and certifies convergence of W0 and W1 by comparing against
/// j_max + 4, doubling j_max up to trunc.j_cap. Throws ConvergenceFailure.
PendularSpectrum solve_pendular(ReducedField x, const BasisTruncation& trunc = {});

/// <a|cos(theta)|b> for two states expanded in the same basis.
double cosine_expectation(std::span<const double> a, std::span<const double> b);

CosineElements cosine_elements(ReducedField x, const BasisTruncation& trunc = {});

SiteProperties site_properties(ReducedField x, const BasisTruncation& trunc = {});

/// Reduced field at which <1|cos|1> changes sign, searched on [4, 6].
/// Throws RootNotBracketed if c1 keeps its sign there.
double c1_zero_crossing(const BasisTruncation& trunc = {});

/// |sum_j c_j Y_{j,0}(theta)|^2 at each grid angle (radians in [0, pi]).
std::vector<double> angular_distribution(const PendularState& state,
                                         std::span<const double> theta_grid);

}  // namespace pendular
