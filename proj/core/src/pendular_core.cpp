#include "pendular/pendular_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

#include "pendular/errors.hpp"

namespace pendular {

ReducedField::ReducedField(double x) : x_(x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InvalidArgument("reduced field must be finite and non-negative, got " +
                          std::to_string(x));
  }
}

void BasisTruncation::validate() const {
  if (j_max < 2) throw InvalidArgument("j_max must be at least 2");
  if (j_cap < j_max) throw InvalidArgument("j_cap must not be below j_max");
  if (!(convergence_tol > 0.0)) throw InvalidArgument("convergence_tol must be positive");
}

Eigen::MatrixXd TridiagonalMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(diagonal.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diagonal[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double v = off_diagonal[static_cast<std::size_t>(i)];
    m(i, i + 1) = v;
    m(i + 1, i) = v;
  }
  return m;
}

double cosine_matrix_element(int j, int jp) {
  if (j < 0 || jp < 0) throw InvalidArgument("angular momentum indices must be non-negative");
  if (std::abs(j - jp) != 1) return 0.0;
  const double lo = std::min(j, jp);
  return (lo + 1.0) / std::sqrt((2.0 * lo + 1.0) * (2.0 * lo + 3.0));
}

TridiagonalMatrix build_pendular_hamiltonian(ReducedField x, int j_max) {
  if (j_max < 1) throw InvalidArgument("j_max must be at least 1");
  TridiagonalMatrix h;
  h.diagonal.resize(static_cast<std::size_t>(j_max) + 1);
  h.off_diagonal.resize(static_cast<std::size_t>(j_max));
  for (int j = 0; j <= j_max; ++j) {
    h.diagonal[static_cast<std::size_t>(j)] = j * (j + 1.0);
  }
  for (int j = 0; j < j_max; ++j) {
    h.off_diagonal[static_cast<std::size_t>(j)] = -x.value() * cosine_matrix_element(j, j + 1);
  }
  return h;
}

PendularSpectrum solve_pendular_fixed(ReducedField x, int j_max) {
  const TridiagonalMatrix h = build_pendular_hamiltonian(x, j_max);
  const Eigen::Map<const Eigen::VectorXd> diag(h.diagonal.data(),
                                               static_cast<Eigen::Index>(h.diagonal.size()));
  const Eigen::Map<const Eigen::VectorXd> sub(h.off_diagonal.data(),
                                              static_cast<Eigen::Index>(h.off_diagonal.size()));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("tridiagonal eigensolver failed at x = " + std::to_string(x.value()));
  }

  PendularSpectrum out;
  out.j_max = j_max;
  const auto n = solver.eigenvalues().size();
  out.states.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;

    PendularState s;
    s.energy = solver.eigenvalues()(k);
    s.coefficients.assign(v.data(), v.data() + v.size());
    s.label = static_cast<int>(k);
    out.states.push_back(std::move(s));
  }
  return out;
}

PendularSpectrum solve_pendular(ReducedField x, const BasisTruncation& trunc) {
  trunc.validate();
  int j_max = trunc.j_max;
  for (;;) {
    PendularSpectrum lo = solve_pendular_fixed(x, j_max);
    const PendularSpectrum hi = solve_pendular_fixed(x, j_max + 4);
    const double d0 = std::abs(lo.states[0].energy - hi.states[0].energy);
    const double d1 = std::abs(lo.states[1].energy - hi.states[1].energy);
    if (d0 < trunc.convergence_tol && d1 < trunc.convergence_tol) return lo;
    if (j_max >= trunc.j_cap) {
      throw ConvergenceFailure("pendular energies not converged at j_max = " +
                               std::to_string(j_max) + " for x = " + std::to_string(x.value()));
    }
    j_max = std::min(2 * j_max, trunc.j_cap);
  }
}

double cosine_expectation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("coefficient vectors differ in length");
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    const double m = cosine_matrix_element(static_cast<int>(j), static_cast<int>(j) + 1);
    sum += m * (a[j] * b[j + 1] + a[j + 1] * b[j]);
  }
  return sum;
}

namespace {

SiteProperties properties_from(ReducedField x, const PendularSpectrum& spec) {
  const auto& s0 = spec.ground();
  const auto& s1 = spec.first_excited();
  SiteProperties p;
  p.x = x.value();
  p.w0 = s0.energy;
  p.w1 = s1.energy;
  p.cos.c0 = cosine_expectation(s0.coefficients, s0.coefficients);
  p.cos.cx = cosine_expectation(s0.coefficients, s1.coefficients);
  p.cos.c1 = cosine_expectation(s1.coefficients, s1.coefficients);
  return p;
}

}  // namespace

CosineElements cosine_elements(ReducedField x, const BasisTruncation& trunc) {
  return site_properties(x, trunc).cos;
}

SiteProperties site_properties(ReducedField x, const BasisTruncation& trunc) {
  return properties_from(x, solve_pendular(x, trunc));
}

double c1_zero_crossing(const BasisTruncation& trunc) {
  constexpr double lo = 4.0;
  constexpr double hi = 6.0;
  auto c1 = [&](double x) { return cosine_elements(ReducedField{x}, trunc).c1; };
  const double f_lo = c1(lo);
  const double f_hi = c1(hi);
  if (f_lo * f_hi > 0.0) {
    throw RootNotBracketed("c1(x) does not change sign on [4, 6]");
  }
  std::uintmax_t max_iter = 200;
  const auto tol = [](double a, double b) { return std::abs(b - a) < 1e-11; };
  const auto [a, b] = boost::math::tools::toms748_solve(c1, lo, hi, f_lo, f_hi, tol, max_iter);
  return 0.5 * (a + b);
}

std::vector<double> angular_distribution(const PendularState& state,
                                         std::span<const double> theta_grid) {
  std::vector<double> density;
  density.reserve(theta_grid.size());
  for (const double theta : theta_grid) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
      throw InvalidArgument("angular grid points must lie in [0, pi]");
    }
    double amp = 0.0;
    for (std::size_t j = 0; j < state.coefficients.size(); ++j) {
      amp += state.coefficients[j] * std::sph_legendre(static_cast<unsigned>(j), 0U, theta);
    }
    density.push_back(amp * amp);
  }
  return density;
}

}  // namespace pendular
