#include "pendular/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "pendular/errors.hpp"

namespace pendular {

namespace {

constexpr double kDensityTol = 1e-12;

// sigma_y (x) sigma_y in the computational basis; real and symmetric.
Matrix4 spin_flip_operator() {
  Matrix4 y = Matrix4::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace

DensityMatrix4::DensityMatrix4(const Matrix4& elements) : rho_(elements) {
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if ((rho_ - rho_.transpose()).cwiseAbs().maxCoeff() > kDensityTol) {
    throw InvalidArgument("density matrix is not symmetric");
  }
  if (std::abs(rho_.trace() - 1.0) > kDensityTol) {
    throw InvalidArgument("density matrix trace differs from 1 by " +
                          std::to_string(rho_.trace() - 1.0));
  }
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -kDensityTol) {
    throw NonPhysicalDensity("density matrix has eigenvalue " +
                             std::to_string(solver.eigenvalues()(0)));
  }
}

DensityMatrix4 DensityMatrix4::pure(const Vector4& state) {
  const double n = state.norm();
  if (!(n > 0.0)) throw InvalidArgument("pure state must be non-zero");
  const Vector4 v = state / n;
  return DensityMatrix4(v * v.transpose());
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(0.25 * Matrix4::Identity());
}

ReducedTemperature::ReducedTemperature(double z) : z_(z) {
  if (std::isnan(z) || z < 0.0) {
    throw InvalidArgument("reduced temperature must be non-negative, got " + std::to_string(z));
  }
}

DensityMatrix4 spin_flip(const DensityMatrix4& rho) {
  const Matrix4 y = spin_flip_operator();
  return DensityMatrix4(y * rho.elements() * y, DensityMatrix4::Unchecked{});
}

namespace {

// sqrt of the eigenvalues of rho * rho~, descending. With rho = sum_k p_k
// v_k v_k^T these are the singular values of T_kl = sqrt(p_k p_l) v_k^T Y v_l,
// which avoids taking square roots of rounding-level eigenvalues.
std::array<double, 4> concurrence_roots(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4> eig(rho.elements());
  if (eig.info() != Eigen::Success) throw NonPhysicalDensity("density eigensolver failed");

  Matrix4 w = eig.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    const double p = eig.eigenvalues()(k);
    if (p < -1e-9) throw NonPhysicalDensity("density matrix has eigenvalue " + std::to_string(p));
    w.col(k) *= std::sqrt(std::max(p, 0.0));
  }
  const Matrix4 t = w.transpose() * spin_flip_operator() * w;
  Eigen::SelfAdjointEigenSolver<Matrix4> tsolve(t, Eigen::EigenvaluesOnly);

  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) roots[static_cast<std::size_t>(k)] = std::abs(tsolve.eigenvalues()(k));
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace

std::array<double, 4> concurrence_eigenvalues(const DensityMatrix4& rho) {
  auto roots = concurrence_roots(rho);
  for (auto& r : roots) r *= r;
  return roots;
}

double concurrence_margin(const DensityMatrix4& rho) {
  const auto r = concurrence_roots(rho);
  return r[0] - r[1] - r[2] - r[3];
}

double concurrence(const DensityMatrix4& rho) {
  return std::max(0.0, concurrence_margin(rho));
}

double pure_state_concurrence(const Vector4& state) {
  const Vector4 v = state.normalized();
  return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

double entanglement_of_formation(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("concurrence must lie in [0, 1]");
  const double p = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  auto h = [](double q) { return q <= 0.0 ? 0.0 : -q * std::log2(q); };
  return h(p) + h(1.0 - p);
}

std::array<double, 4> eigenstate_concurrences(const PairEigensystem& eig) {
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = pure_state_concurrence(eig.vector(k));
  return out;
}

std::array<double, 4> eigenstate_concurrences(const PairConfig& cfg, const BasisTruncation& trunc) {
  return eigenstate_concurrences(diagonalize_pair(cfg, trunc));
}

std::array<double, 4> boltzmann_populations(const std::array<double, 4>& energies,
                                            ReducedTemperature z) {
  const double e0 = *std::min_element(energies.begin(), energies.end());
  std::array<double, 4> p{};
  if (z.value() == 0.0) {
    const double tol = 1e-12 * (1.0 + std::abs(e0));
    for (std::size_t i = 0; i < 4; ++i) p[i] = energies[i] - e0 <= tol ? 1.0 : 0.0;
  } else {
    for (std::size_t i = 0; i < 4; ++i) p[i] = std::exp(-(energies[i] - e0) / z.value());
  }
  double total = 0.0;
  for (const double v : p) total += v;
  for (auto& v : p) v /= total;
  return p;
}

DensityMatrix4 thermal_density_matrix(const PairEigensystem& eig, ReducedTemperature z) {
  const auto p = boltzmann_populations(eig.energies, z);
  Matrix4 rho = Matrix4::Zero();
  for (int k = 0; k < 4; ++k) {
    const Vector4 v = eig.vector(k);
    rho += p[static_cast<std::size_t>(k)] * (v * v.transpose());
  }
  rho = 0.5 * (rho + rho.transpose()).eval();
  return DensityMatrix4(rho);
}

DensityMatrix4 thermal_density_matrix(const PairConfig& cfg, ReducedTemperature z,
                                      const BasisTruncation& trunc) {
  return thermal_density_matrix(diagonalize_pair(cfg, trunc), z);
}

double thermal_concurrence(const PairConfig& cfg, ReducedTemperature z,
                           const BasisTruncation& trunc) {
  return concurrence(thermal_density_matrix(cfg, z, trunc));
}

namespace {

double ground_concurrence(const PairSites& sites, double y) {
  const auto eig = diagonalize_pair(sites, y, true);
  return pure_state_concurrence(eig.vector(0));
}

}  // namespace

double weak_coupling_slope(const SiteProperties& site) {
  const PairSites sites{site, site};
  const double k = ground_concurrence(sites, kSlopeProbe) / kSlopeProbe;
  const double k_check = ground_concurrence(sites, kSlopeCheck) / kSlopeCheck;
  if (!(std::abs(k_check / k - 1.0) <= 0.01)) {
    throw LinearityCheckFailed("ground-state concurrence not linear in y at x = " +
                               std::to_string(site.x));
  }
  return k;
}

double weak_coupling_slope(ReducedField x, const BasisTruncation& trunc) {
  return weak_coupling_slope(site_properties(x, trunc));
}

double weak_coupling_concurrence(ReducedField x, ReducedField x_prime, double y,
                                 const BasisTruncation& trunc) {
  if (!(y >= 0.0)) throw InvalidArgument("coupling y must be non-negative");
  if (y >= kLinearRegimeLimit) {
    throw OutOfLinearRegime("weak-coupling law applies only for y < 0.04, got " +
                            std::to_string(y));
  }
  const double k = weak_coupling_slope(x, trunc);
  const double kp = x.value() == x_prime.value() ? k : weak_coupling_slope(x_prime, trunc);
  return std::sqrt(k * kp) * y;
}

double critical_coupling(const SiteProperties& site, ReducedTemperature z) {
  if (!(z.value() > 0.0)) throw InvalidArgument("critical coupling requires z > 0");
  const PairSites sites{site, site};
  auto margin = [&](double y) {
    return concurrence_margin(thermal_density_matrix(diagonalize_pair(sites, y, true), z));
  };
  constexpr double lo = 1e-7;
  constexpr double hi = 1.0;
  if (margin(lo) > 0.0) return 0.0;
  if (!(margin(hi) > 0.0)) {
    throw NoOnsetFound("thermal concurrence vanishes for all y in [0, 1] at x = " +
                       std::to_string(site.x) + ", z = " + std::to_string(z.value()));
  }
  const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-7; };
  const auto [a, b] = boost::math::tools::bisect(margin, lo, hi, tol);
  return 0.5 * (a + b);
}

double critical_coupling(ReducedField x, ReducedTemperature z, const BasisTruncation& trunc) {
  return critical_coupling(site_properties(x, trunc), z);
}

}  // namespace pendular
