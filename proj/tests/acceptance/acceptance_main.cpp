// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pendular/dipole_pair.hpp"
#include "pendular/entanglement.hpp"
#include "pendular/fitting.hpp"
#include "pendular/molecules.hpp"
#include "pendular/pendular_core.hpp"
#include "pendular/spectroscopy.hpp"
#include "pendular/zero_field.hpp"

using namespace pendular;

namespace {

// Collects failed checks with a short reason each.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(10);
    s << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
  void note(const std::string& line) { notes_.push_back(line); }

  [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }
  [[nodiscard]] const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double round_sig3(double v) {
  if (v == 0.0) return 0.0;
  const double e = std::floor(std::log10(std::abs(v))) - 2.0;
  const double scale = std::pow(10.0, e);
  return std::round(v / scale) * scale;
}

bool same_sig3(double got, double reference) {
  return std::abs(round_sig3(got) - reference) <= 1e-9 * std::abs(reference);
}

void table_reproduction(Checker& c) {
  const auto reps = standard_cnot_reports();
  const double site_rows[2][3][4] = {
      {{2.2709, 0.30165, -0.16467, 0.46632},
       {2.2759, 0.30404, -0.16573, 0.46977},
       {2.3218, 0.32487, -0.17461, 0.49948}},
      {{3.5614, 0.57922, -0.16362, 0.74284},
       {3.5831, 0.58149, -0.16150, 0.74298},
       {3.7789, 0.60051, -0.14115, 0.74165}}};
  const double pair_rows[2][2][3] = {{{4.99e-3, 2.19e-6, 1.20e-6}, {5.09e-2, 2.33e-6, 1.17e-6}},
                                     {{2.17e-2, 5.52e-6, 3.57e-7}, {2.17e-1, 5.51e-6, 3.34e-7}}};
  const char* site_names[4] = {"gap", "C0", "C1", "C0-C1"};
  for (std::size_t r = 0; r < 2; ++r) {
    std::vector<QubitParameters> qs{reps[r].site};
    qs.insert(qs.end(), reps[r].partners.begin(), reps[r].partners.end());
    for (std::size_t k = 0; k < 3; ++k) {
      const double got[4] = {qs[k].gap, qs[k].c0, qs[k].c1, qs[k].c0 - qs[k].c1};
      for (std::size_t q = 0; q < 4; ++q) {
        c.near(got[q], site_rows[r][k][q], 1e-4, fmt("x=%g ", qs[k].x) + site_names[q]);
      }
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& row = reps[r].rows[k];
      const auto label = fmt("x=%g x'=%g ", reps[r].site.x, row.x_prime);
      c.expect(same_sig3(row.transitions.addressing_gap, pair_rows[r][k][0]),
               label + fmt("(w1-w3)/B %.6g vs %.3g", row.transitions.addressing_gap, pair_rows[r][k][0]));
      c.expect(same_sig3(row.transitions.delta_omega, pair_rows[r][k][1]),
               label + fmt("dOmega/B %.6g vs %.3g", row.transitions.delta_omega, pair_rows[r][k][1]));
      c.expect(std::abs(row.concurrence / pair_rows[r][k][2] - 1.0) < 0.05,
               label + fmt("C12 %.6g vs %.3g", row.concurrence, pair_rows[r][k][2]));
    }
  }
}

void zero_field_equivalence(Checker& c) {
  for (const double y : {0.1, 1.0, 6.0}) {
    const auto zeta = ZetaCoupling::from_y(y);
    auto analytic = analytic_eigensystem(zeta);
    std::sort(analytic.begin(), analytic.end(),
              [](const auto& a, const auto& b) { return a.energy < b.energy; });
    const auto eig = diagonalize_pair(PairConfig::symmetric(0.0, y));
    const auto conc = eigenstate_concurrences(eig);
    for (std::size_t k = 0; k < 4; ++k) {
      c.near(eig.energies[k], analytic[k].energy, 1e-10, fmt("y=%g E%g", y, k + 1.0));
      c.near(conc[k], analytic[k].concurrence, 1e-10, fmt("y=%g C%g", y, k + 1.0));
    }
    for (const double z : {0.1, 0.5, 2.0}) {
      c.near(thermal_concurrence(PairConfig::symmetric(0.0, y), ReducedTemperature{z}),
             analytic_thermal_concurrence(zeta, ReducedTemperature{z}), 1e-9,
             fmt("y=%g z=%g thermal", y, z));
    }
  }
}

void weak_coupling_law(Checker& c) {
  c.near(weak_coupling_slope(ReducedField{0.0}), 1.0 / 6.0, 1e-6, "K(0)");
  for (const double x : {0.0, 1.0, 2.0, 3.0, 4.9, 8.0}) {
    const double k = weak_coupling_slope(ReducedField{x});
    double worst = 0.0, worst_y = 0.0;
    for (const double y : {1e-4, 1e-3, 5e-3, 0.01, 0.02, 0.03, 0.04}) {
      const double c12 = thermal_concurrence(PairConfig::symmetric(x, y), ReducedTemperature{0.0});
      const double dev = std::abs(c12 - k * y) / c12;
      if (dev > worst) worst = dev, worst_y = y;
    }
    c.expect(worst < 0.01, fmt("x=%g: |C12-Ky|/C12 = %.4f at y=%g", x, worst, worst_y));
    c.note(fmt("x=%g K=%.10f max linear deviation %.4f", x, k, worst));
  }
}

void contour_anchors(Checker& c) {
  c.near(thermal_concurrence(PairConfig::symmetric(3.0, 1.0), ReducedTemperature{0.0}), 0.0473, 5e-4,
         "C12(x=3,y=1,z=0)");
  c.near(thermal_concurrence(PairConfig::symmetric(0.0, 1.0), ReducedTemperature{0.0}), 0.1644, 2e-4,
         "C12(x=0,y=1,z=0)");
}

void c1_root(Checker& c) {
  const double root = c1_zero_crossing();
  c.near(root, 4.90, 0.02, "C1 zero crossing");
  c.note(fmt("C1 zero crossing at x = %.9f", root));
}

void fit_regeneration(Checker& c) {
  struct Target {
    ModelFamily model;
    double r2_min;
  };
  const Target targets[] = {{ModelFamily::KSigmoid, 0.998},
                            {ModelFamily::WGap, 0.9999},
                            {ModelFamily::C0Power, 0.9999},
                            {ModelFamily::C1DoubleSigmoid, 0.0}};
  for (const auto& t : targets) {
    const auto name = std::string(model_name(t.model));
    const auto fit = fit_exact_curve(t.model);
    const auto& pub = reference_parameters(t.model);
    c.expect(fit.converged, name + " did not converge");
    if (t.r2_min > 0.0) {
      c.expect(fit.r_squared >= t.r2_min, name + fmt(" R2 = %.6f < %.6g", fit.r_squared, t.r2_min));
    }
    const auto names = parameter_names(t.model);
    std::string line = name + fmt(" R2=%.7f", fit.r_squared);
    for (std::size_t k = 0; k < fit.parameters.size(); ++k) {
      const double dev = std::abs(fit.parameters[k] - pub.values[k]) / pub.ci_half_widths[k];
      c.expect(dev <= 3.0, name + " " + names[k] +
                               fmt(" = %.6g vs %.6g (%.1f CI half-widths)", fit.parameters[k],
                                   pub.values[k], dev));
      line += " " + names[k] + fmt("=%.6g(%.1fci)", fit.parameters[k], dev);
    }
    c.note(line);
  }
  const auto wide = fit_exact_curve(ModelFamily::WGap, 201, 10.0);
  std::string line = fmt("W_GAP on [0,10] with 201 points: R2=%.7f", wide.r_squared);
  const auto& pub = reference_parameters(ModelFamily::WGap);
  for (std::size_t k = 0; k < wide.parameters.size(); ++k) {
    line += fmt(" %.6g(%.1fci)", wide.parameters[k],
                std::abs(wide.parameters[k] - pub.values[k]) / pub.ci_half_widths[k]);
  }
  c.note(line);
}

Vector4 basis_vector(double a, double b, double cc, double d) { return Vector4(a, b, cc, d).normalized(); }

void property_suites(Checker& c) {
  const double r = 1.0 / std::numbers::sqrt2;
  const Vector4 bells[4] = {Vector4(r, 0, 0, r), Vector4(-r, 0, 0, r), Vector4(0, r, r, 0),
                            Vector4(0, -r, r, 0)};
  for (const auto& b : bells) {
    const auto rho = DensityMatrix4::pure(b);
    c.expect((spin_flip(rho).elements() - rho.elements()).norm() < 1e-15, "Bell state not spin-flip invariant");
    c.near(concurrence(rho), 1.0, 1e-12, "Bell concurrence");
  }
  c.near(concurrence(DensityMatrix4::pure(basis_vector(1, 0, 0, 0))), 0.0, 1e-12, "|00> concurrence");
  c.near(concurrence(DensityMatrix4::pure(basis_vector(1, 2, 3, 6))), 0.0, 1e-12, "product concurrence");

  for (const double x : {0.5, 2.0, 5.0}) {
    for (const double alpha : {0.0, 0.9, std::numbers::pi / 2}) {
      const auto t = transition_frequencies(PairConfig{ReducedField{x}, ReducedField{1.1 * x}, 1e-3, alpha});
      c.near(t.w2 - t.w3, t.w4 - t.w1, 1e-12, fmt("dOmega identity x=%g alpha=%g", x, alpha));
      c.near(t.w2 - t.w3, t.delta_omega, 1e-12, "dOmega definition");
    }
    c.near(delta_omega(PairConfig{ReducedField{x}, ReducedField{1.1 * x}, 1e-3, kMagicAngle}), 0.0, 1e-18,
           fmt("magic-angle null x=%g", x));
  }

  for (const double x : {0.0, 2.0, 4.9}) {
    for (const double y : {0.01, 1.0, 6.0}) {
      const auto eig = diagonalize_pair(PairConfig::symmetric(x, y));
      double best = 0.0;
      for (int k = 0; k < 4; ++k) best = std::max(best, std::abs(eig.vector(k).dot(bells[3])));
      c.near(best, 1.0, 1e-12, fmt("antisymmetric Bell eigenvector x=%g y=%g", x, y));
    }
  }

  for (const double t1 : {0.3, 1.2, 2.5}) {
    for (const double alpha : {0.0, 0.7, std::numbers::pi / 2}) {
      const auto avg = verify_azimuthal_average(t1, 2.0, alpha);
      c.near(avg.numeric, avg.closed_form, 1e-8, fmt("azimuthal average t1=%g alpha=%g", t1, alpha));
    }
  }

  for (const double x : {1.0, 5.0, 10.0}) {
    const auto a = solve_pendular_fixed(ReducedField{x}, 20);
    const auto b = solve_pendular_fixed(ReducedField{x}, 40);
    for (int k = 0; k < 2; ++k) {
      c.near(a.states[static_cast<std::size_t>(k)].energy, b.states[static_cast<std::size_t>(k)].energy, 1e-10,
             fmt("W%g convergence in j_max at x=%g", k, x));
    }
  }
}

void units(Checker& c) {
  const auto sro = find_molecule("SrO");
  const double y = reduced_coupling(sro.dipole_debye, sro.site_spacing_um(), sro.b_cm1);
  c.near(y, 9.7e-6, 0.05e-6, "SrO y");
  c.note(fmt("SrO y = %.5g", y));
  for (const double x : {1.0, 3.0}) {
    const double field = x * sro.b_cm1 / (0.0168 * sro.dipole_debye);
    const auto reduced = to_reduced(sro, field, 0.0);
    const double dw = delta_omega(PairConfig{ReducedField{reduced.x}, ReducedField{1.01 * reduced.x}, reduced.y});
    const double khz = khz_from_reduced(dw, sro.b_cm1);
    c.expect(khz >= 20.0 && khz <= 60.0, fmt("SrO x=%g: dOmega = %.3f kHz outside [20, 60]", x, khz));
    c.note(fmt("SrO at %.3f kV/cm (x=%g): dOmega = %.3f kHz", field, x, khz));
  }
}

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "CNOT feasibility table reproduction", 1.0, table_reproduction},
      {"AC2", "zero-field closed-form equivalence", 1.0, zero_field_equivalence},
      {"AC3", "weak-coupling law", 0.0, weak_coupling_law},
      {"AC4", "thermal concurrence anchors", 0.0, contour_anchors},
      {"AC5", "C1 zero crossing", 0.0, c1_root},
      {"AC6", "fit regeneration", 10.0, fit_regeneration},
      {"AC7", "property suites", 60.0, property_suites},
      {"AC8", "unit conversions", 0.0, units},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0.0) c.expect(secs < cr.budget_s, fmt("runtime %.3f s exceeds %.0f s", secs, cr.budget_s));
    const bool ok = c.failures().empty();
    failed += ok ? 0 : 1;
    std::printf("%s %s: %s (%.3f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.title, secs);
    for (const auto& f : c.failures()) std::printf("    failed: %s\n", f.c_str());
    for (const auto& n : c.notes()) std::printf("    note: %s\n", n.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
