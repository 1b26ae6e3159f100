#include "pendular/spectroscopy.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "pendular/entanglement.hpp"
#include "pendular/errors.hpp"
#include "pendular/fitting.hpp"

namespace pendular {

QubitParameters QubitParameters::from(const SiteProperties& site) {
  return {site.x, site.gap(), site.cos.c0, site.cos.c1};
}

TransitionSet transition_frequencies(const QubitParameters& s, const QubitParameters& sp,
                                     double omega_alpha) {
  TransitionSet t;
  t.w1 = sp.gap + omega_alpha * s.c0 * (sp.c1 - sp.c0);
  t.w2 = s.gap + omega_alpha * sp.c1 * (s.c1 - s.c0);
  t.w3 = s.gap + omega_alpha * sp.c0 * (s.c1 - s.c0);
  t.w4 = sp.gap + omega_alpha * s.c1 * (sp.c1 - sp.c0);
  t.delta_omega = delta_omega(s, sp, omega_alpha);
  t.addressing_gap = t.w1 - t.w3;
  return t;
}

TransitionSet transition_frequencies(const PairConfig& cfg, const BasisTruncation& trunc) {
  const auto sites = PairSites::solve(cfg, trunc);
  return transition_frequencies(QubitParameters::from(sites.site),
                                QubitParameters::from(sites.site_prime), cfg.effective_coupling());
}

double delta_omega(const QubitParameters& s, const QubitParameters& sp, double omega_alpha) {
  return omega_alpha * (s.c1 - s.c0) * (sp.c1 - sp.c0);
}

double delta_omega(const PairConfig& cfg, const BasisTruncation& trunc) {
  const auto sites = PairSites::solve(cfg, trunc);
  return delta_omega(QubitParameters::from(sites.site), QubitParameters::from(sites.site_prime),
                     cfg.effective_coupling());
}

TransitionSet exact_transition_frequencies(const PairConfig& cfg, const BasisTruncation& trunc) {
  const auto eig = diagonalize_pair(cfg, trunc);
  // Energy of the eigenvector that overlaps each product state most.
  std::array<double, 4> level{};
  std::array<bool, 4> taken{};
  for (int basis = 0; basis < 4; ++basis) {
    int best = -1;
    double best_overlap = -1.0;
    for (int k = 0; k < 4; ++k) {
      if (taken[static_cast<std::size_t>(k)]) continue;
      const double o = std::abs(eig.vectors(basis, k));
      if (o > best_overlap) {
        best_overlap = o;
        best = k;
      }
    }
    taken[static_cast<std::size_t>(best)] = true;
    level[static_cast<std::size_t>(basis)] = eig.energies[static_cast<std::size_t>(best)];
  }
  const double e00 = level[0], e01 = level[1], e10 = level[2], e11 = level[3];
  TransitionSet t;
  t.w1 = e01 - e00;
  t.w2 = e11 - e01;
  t.w3 = e10 - e00;
  t.w4 = e11 - e10;
  t.delta_omega = t.w2 - t.w3;
  t.addressing_gap = t.w1 - t.w3;
  return t;
}

std::vector<AlphaSweepRow> alpha_sweep(ReducedField x, ReducedField x_prime, double y,
                                       std::span<const double> alpha_grid,
                                       const BasisTruncation& trunc) {
  PairConfig cfg{x, x_prime, y, std::numbers::pi / 2.0};
  cfg.validate();
  const auto sites = PairSites::solve(cfg, trunc);
  const auto q = QubitParameters::from(sites.site);
  const auto qp = QubitParameters::from(sites.site_prime);

  std::vector<AlphaSweepRow> rows;
  rows.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2.0 + 1e-15)) {
      throw InvalidArgument("alpha must lie in [0, pi/2]");
    }
    cfg.alpha = alpha;
    const double f = cfg.effective_coupling();
    const auto eig = diagonalize_pair(sites, f, cfg.is_symmetric());
    rows.push_back({alpha, delta_omega(q, qp, f), pure_state_concurrence(eig.vector(0))});
  }
  return rows;
}

QubitParameters qubit_parameters(double x, SiteSource source, const BasisTruncation& trunc) {
  if (source == SiteSource::Exact) return QubitParameters::from(site_properties(ReducedField{x}, trunc));
  ReducedField checked{x};
  return {checked.value(), evaluate_fitted(ModelFamily::WGap, x),
          evaluate_fitted(ModelFamily::C0Power, x),
          evaluate_fitted(ModelFamily::C1DoubleSigmoid, x)};
}

CnotReport cnot_report(double x, std::span<const double> x_primes, double omega_alpha,
                       SiteSource source, const BasisTruncation& trunc) {
  CnotReport rep;
  rep.omega_alpha = omega_alpha;
  rep.source = source;
  rep.site = qubit_parameters(x, source, trunc);
  const double k = weak_coupling_slope(ReducedField{x}, trunc);

  for (const double xp : x_primes) {
    const auto q = qubit_parameters(xp, source, trunc);
    rep.partners.push_back(q);

    CnotPairRow row;
    row.x_prime = xp;
    row.transitions = transition_frequencies(rep.site, q, omega_alpha);
    const double kp = xp == x ? k : weak_coupling_slope(ReducedField{xp}, trunc);
    row.concurrence = std::sqrt(k * kp) * std::abs(omega_alpha);
    row.tau31 = 1.0 / std::abs(row.transitions.w3 - row.transitions.w1);
    row.tau32 = 1.0 / std::abs(row.transitions.w3 - row.transitions.w2);
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string sci3(double v) { return fmt("%.2E", v); }

}  // namespace

std::string format_cnot_text(std::span<const CnotReport> reports) {
  constexpr int label_w = 16;
  constexpr int col_w = 12;
  std::ostringstream os;
  auto cell = [&](const std::string& s) {
    os << std::string(static_cast<std::size_t>(std::max(0, col_w - static_cast<int>(s.size()))), ' ')
       << s;
  };
  auto label = [&](const std::string& s) {
    os << s << std::string(static_cast<std::size_t>(std::max(0, label_w - static_cast<int>(s.size()))), ' ');
  };
  auto gap = [&] { os << "  |"; };

  label("x");
  for (const auto& r : reports) {
    gap();
    cell("x=" + fmt("%.4g", r.site.x));
    for (const auto& p : r.partners) cell("x'=" + fmt("%.4g", p.x));
  }
  os << '\n';

  auto site_row = [&](const std::string& name, auto getter, const char* spec) {
    label(name);
    for (const auto& r : reports) {
      gap();
      cell(fmt(spec, getter(r.site)));
      for (const auto& p : r.partners) cell(fmt(spec, getter(p)));
    }
    os << '\n';
  };
  site_row("(W1-W0)/B", [](const QubitParameters& q) { return q.gap; }, "%.4f");
  site_row("C0", [](const QubitParameters& q) { return q.c0; }, "%.5f");
  site_row("C1", [](const QubitParameters& q) { return q.c1; }, "%.5f");
  site_row("C0-C1", [](const QubitParameters& q) { return q.c0 - q.c1; }, "%.5f");

  auto pair_row = [&](const std::string& name, auto getter) {
    label(name);
    for (const auto& r : reports) {
      gap();
      cell("");
      for (const auto& row : r.rows) cell(sci3(getter(row)));
    }
    os << '\n';
  };
  pair_row("(w1-w3)/B", [](const CnotPairRow& r) { return r.transitions.addressing_gap; });
  pair_row("dOmega/B", [](const CnotPairRow& r) { return r.transitions.delta_omega; });
  pair_row("C12", [](const CnotPairRow& r) { return r.concurrence; });
  pair_row("tau31*B >>", [](const CnotPairRow& r) { return r.tau31; });
  pair_row("tau32*B >>", [](const CnotPairRow& r) { return r.tau32; });

  if (!reports.empty()) {
    os << "Omega_alpha/B = " << fmt("%.3g", reports.front().omega_alpha) << ", site data: "
       << (reports.front().source == SiteSource::Fitted ? "fitted" : "exact") << '\n';
  }
  return os.str();
}

std::string format_cnot_csv(std::span<const CnotReport> reports) {
  std::ostringstream os;
  os << "x,x_prime,quantity,value\n";
  auto line = [&](double x, const std::string& xp, const char* q, double v) {
    os << fmt("%.10g", x) << ',' << xp << ',' << q << ',' << fmt("%.10g", v) << '\n';
  };
  for (const auto& r : reports) {
    auto site = [&](const QubitParameters& q, const std::string& xp) {
      line(q.x, xp, "dW", q.gap);
      line(q.x, xp, "C0", q.c0);
      line(q.x, xp, "C1", q.c1);
      line(q.x, xp, "dC", q.c0 - q.c1);
    };
    site(r.site, "");
    for (const auto& p : r.partners) site(p, "");
    for (const auto& row : r.rows) {
      const std::string xp = fmt("%.10g", row.x_prime);
      line(r.site.x, xp, "w1", row.transitions.w1);
      line(r.site.x, xp, "w2", row.transitions.w2);
      line(r.site.x, xp, "w3", row.transitions.w3);
      line(r.site.x, xp, "w4", row.transitions.w4);
      line(r.site.x, xp, "w1_minus_w3", row.transitions.addressing_gap);
      line(r.site.x, xp, "dOmega", row.transitions.delta_omega);
      line(r.site.x, xp, "C12", row.concurrence);
      line(r.site.x, xp, "tau31", row.tau31);
      line(r.site.x, xp, "tau32", row.tau32);
    }
  }
  return os.str();
}

std::vector<CnotReport> standard_cnot_reports(SiteSource source, const BasisTruncation& trunc) {
  constexpr double omega_alpha = 1e-5;
  const std::array<double, 2> near1{1.01, 1.10};
  const std::array<double, 2> near3{3.03, 3.30};
  return {cnot_report(1.0, near1, omega_alpha, source, trunc),
          cnot_report(3.0, near3, omega_alpha, source, trunc)};
}

}  // namespace pendular
