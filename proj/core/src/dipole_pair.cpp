#include "pendular/dipole_pair.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "pendular/errors.hpp"

namespace pendular {

double PairConfig::effective_coupling() const {
  const double c = std::cos(alpha);
  return y * (1.0 - 3.0 * c * c);
}

void PairConfig::validate() const {
  if (!std::isfinite(y) || y < 0.0) {
    throw InvalidArgument("coupling y must be finite and non-negative, got " + std::to_string(y));
  }
  if (!std::isfinite(alpha)) throw InvalidArgument("alpha must be finite");
}

PairSites PairSites::solve(const PairConfig& cfg, const BasisTruncation& trunc) {
  cfg.validate();
  PairSites s;
  s.site = site_properties(cfg.x, trunc);
  s.site_prime = cfg.is_symmetric() ? s.site : site_properties(cfg.x_prime, trunc);
  return s;
}

namespace {

Eigen::Matrix2d cosine_block(const CosineElements& c) {
  Eigen::Matrix2d m;
  m << c.c0, c.cx, c.cx, c.c1;
  return m;
}

}  // namespace

Matrix4 build_pair_hamiltonian(const PairSites& sites, double effective_coupling) {
  const Eigen::Matrix2d m = cosine_block(sites.site.cos);
  const Eigen::Matrix2d mp = cosine_block(sites.site_prime.cos);
  const std::array<double, 2> w{sites.site.w0, sites.site.w1};
  const std::array<double, 2> wp{sites.site_prime.w0, sites.site_prime.w1};

  Matrix4 h;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
          h(product_index(a, ap), product_index(b, bp)) = effective_coupling * m(a, b) * mp(ap, bp);
        }
      }
      h(product_index(a, ap), product_index(a, ap)) += w[static_cast<std::size_t>(a)] +
                                                       wp[static_cast<std::size_t>(ap)];
    }
  }
  return h;
}

Matrix4 build_pair_hamiltonian(const PairConfig& cfg, const BasisTruncation& trunc) {
  return build_pair_hamiltonian(PairSites::solve(cfg, trunc), cfg.effective_coupling());
}

Matrix4 bell_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  Matrix4 u;
  //     B1   B2   B3   B4
  u << r, -r, 0.0, 0.0,    // |00>
      0.0, 0.0, r, -r,     // |01>
      0.0, 0.0, r, r,      // |10>
      r, r, 0.0, 0.0;      // |11>
  return u;
}

Matrix4 bell_basis_hamiltonian(const SiteProperties& site, double effective_coupling) {
  const double w_plus = site.w1 + site.w0;
  const double w_minus = site.w1 - site.w0;
  const auto& c = site.cos;
  const double cx2 = c.cx * c.cx;
  const double a_plus = 0.5 * (c.c1 * c.c1 + c.c0 * c.c0) + cx2;
  const double a_minus = 0.5 * (c.c1 * c.c1 + c.c0 * c.c0) - cx2;
  const double b = 0.5 * (c.c1 * c.c1 - c.c0 * c.c0);
  const double c_plus = c.cx * (c.c1 + c.c0);
  const double c_minus = c.cx * (c.c1 - c.c0);
  const double d_plus = c.c1 * c.c0 + cx2;
  const double d_minus = c.c1 * c.c0 - cx2;

  Matrix4 hs;
  hs << w_plus, w_minus, 0.0, 0.0,
      w_minus, w_plus, 0.0, 0.0,
      0.0, 0.0, w_plus, 0.0,
      0.0, 0.0, 0.0, w_plus;
  Matrix4 v;
  v << a_plus, b, c_plus, 0.0,
      b, a_minus, c_minus, 0.0,
      c_plus, c_minus, d_plus, 0.0,
      0.0, 0.0, 0.0, d_minus;
  return hs + effective_coupling * v;
}

Matrix4 bell_basis_hamiltonian(const PairConfig& cfg, const BasisTruncation& trunc) {
  cfg.validate();
  if (!cfg.is_symmetric()) {
    throw AsymmetricSites("Bell-basis form requires x == x_prime");
  }
  return bell_basis_hamiltonian(site_properties(cfg.x, trunc), cfg.effective_coupling());
}

namespace {

void fix_phase(Eigen::Ref<Vector4> v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v(i)) >= vmax - 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

double index_weight(const Vector4& v) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += i * v(i) * v(i);
  return s;
}

// <v|P|v> with P exchanging the two sites (|01> <-> |10>).
double exchange_parity(const Vector4& v) {
  return v(0) * v(0) + 2.0 * v(1) * v(2) + v(3) * v(3);
}

PairEigensystem sorted_eigensystem(const std::array<double, 4>& e, const Matrix4& vecs) {
  std::array<int, 4> order{};
  std::iota(order.begin(), order.end(), 0);
  const double scale = 1.0 + std::max(std::abs(e.front()), std::abs(e.back()));
  const double tol = 1e-12 * scale;
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const auto ei = e[static_cast<std::size_t>(i)];
    const auto ej = e[static_cast<std::size_t>(j)];
    if (std::abs(ei - ej) > tol) return ei < ej;
    const Vector4 vi = vecs.col(i);
    const Vector4 vj = vecs.col(j);
    const double wi = index_weight(vi);
    const double wj = index_weight(vj);
    if (std::abs(wi - wj) > 1e-12) return wi < wj;
    return exchange_parity(vi) < exchange_parity(vj) - 1e-12;
  });

  PairEigensystem out;
  for (int k = 0; k < 4; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.energies[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(src)];
    out.vectors.col(k) = vecs.col(src);
    fix_phase(out.vectors.col(k));
  }
  return out;
}

}  // namespace

PairEigensystem diagonalize_pair(const PairSites& sites, double effective_coupling,
                                 bool symmetric_sites) {
  const Matrix4 h = build_pair_hamiltonian(sites, effective_coupling);
  std::array<double, 4> energies{};
  Matrix4 vectors = Matrix4::Zero();

  if (symmetric_sites) {
    // The antisymmetric Bell vector decouples; diagonalize the remaining
    // 3x3 block in the Bell basis.
    const Matrix4 u = bell_basis();
    const Matrix4 hb = u.transpose() * h * u;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> block(hb.topLeftCorner<3, 3>());
    if (block.info() != Eigen::Success) throw ConvergenceFailure("pair eigensolver failed");
    for (int k = 0; k < 3; ++k) {
      energies[static_cast<std::size_t>(k)] = block.eigenvalues()(k);
      vectors.col(k) = u.leftCols<3>() * block.eigenvectors().col(k);
    }
    energies[3] = hb(3, 3);
    vectors.col(3) = u.col(3);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(h);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("pair eigensolver failed");
    for (int k = 0; k < 4; ++k) energies[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    vectors = solver.eigenvectors();
  }
  return sorted_eigensystem(energies, vectors);
}

PairEigensystem diagonalize_pair(const PairConfig& cfg, const BasisTruncation& trunc) {
  return diagonalize_pair(PairSites::solve(cfg, trunc), cfg.effective_coupling(),
                          cfg.is_symmetric());
}

AzimuthalAverage verify_azimuthal_average(double theta1, double theta2, double alpha, int grid) {
  if (grid < 4) throw InvalidArgument("azimuthal grid needs at least 4 points per angle");
  const double ct1 = std::cos(theta1), st1 = std::sin(theta1);
  const double ct2 = std::cos(theta2), st2 = std::sin(theta2);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double step = 2.0 * std::numbers::pi / grid;

  // The integrand is a trigonometric polynomial in both azimuths, so the
  // periodic rectangle rule is exact up to rounding.
  double sum = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double phi1 = i * step;
    const double cos_gamma1 = ct1 * ca + st1 * sa * std::cos(phi1);
    for (int k = 0; k < grid; ++k) {
      const double phi2 = k * step;
      const double cos_beta = ct1 * ct2 + st1 * st2 * std::cos(phi1 - phi2);
      const double cos_gamma2 = ct2 * ca + st2 * sa * std::cos(phi2);
      sum += cos_beta - 3.0 * cos_gamma1 * cos_gamma2;
    }
  }
  AzimuthalAverage out;
  out.numeric = sum / (static_cast<double>(grid) * grid);
  out.closed_form = (1.0 - 3.0 * ca * ca) * ct1 * ct2;
  return out;
}

}  // namespace pendular
