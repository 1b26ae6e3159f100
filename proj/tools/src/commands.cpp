#include "pendular_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pendular/dipole_pair.hpp"
#include "pendular/entanglement.hpp"
#include "pendular/errors.hpp"
#include "pendular/fitting.hpp"
#include "pendular/molecules.hpp"
#include "pendular/spectroscopy.hpp"
#include "pendular_cli/sweep.hpp"

namespace pendular::cli {

namespace {

constexpr int kCoefficientColumns = 7;  // a0..a6 and b0..b6

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace

SweepRange SweepRange::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument("range must look like start:stop:points");
  SweepRange r;
  r.start = parse_double(parts[0]);
  r.stop = parse_double(parts[1]);
  const double n = parse_double(parts[2]);
  if (n != std::floor(n) || n < 2 || n > 1e7) throw InvalidArgument("range needs an integer point count >= 2");
  r.points = static_cast<int>(n);
  if (!(r.start < r.stop)) throw InvalidArgument("range start must be below its stop");
  return r;
}

std::vector<double> SweepRange::values() const { return uniform_grid(start, stop, points); }

BasisTruncation truncation_from_env() {
  BasisTruncation t;
  if (const char* env = std::getenv("PENDULAR_JMAX"); env != nullptr && *env != '\0') {
    const double v = parse_double(env);
    if (v != std::floor(v) || v < 2) throw InvalidArgument("PENDULAR_JMAX must be an integer >= 2");
    t.j_max = static_cast<int>(v);
  }
  t.j_cap = std::max(t.j_cap, t.j_max);
  return t;
}

BasisTruncation truncation_for(int jmax) {
  BasisTruncation t = truncation_from_env();
  if (jmax > 0) {
    t.j_max = jmax;
    t.j_cap = std::max(t.j_cap, jmax);
  }
  t.validate();
  return t;
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string pendular_csv(const std::vector<double>& xs, const BasisTruncation& trunc) {
  struct Row {
    SiteProperties site;
    std::vector<double> a, b;
  };
  const auto rows = parallel_map<Row>(xs.size(), [&](std::size_t i) {
    const ReducedField x{xs[i]};
    const auto spec = solve_pendular(x, trunc);
    Row r;
    r.site = site_properties(x, trunc);
    r.a = spec.ground().coefficients;
    r.b = spec.first_excited().coefficients;
    return r;
  });

  std::ostringstream os;
  os << "x,W0,W1,dW,C0,CX,C1,dC";
  for (int j = 0; j < kCoefficientColumns; ++j) os << ",a" << j;
  for (int j = 0; j < kCoefficientColumns; ++j) os << ",b" << j;
  os << '\n';
  for (const auto& r : rows) {
    const auto& s = r.site;
    os << format_number(s.x) << ',' << format_number(s.w0) << ',' << format_number(s.w1) << ','
       << format_number(s.gap()) << ',' << format_number(s.cos.c0) << ','
       << format_number(s.cos.cx) << ',' << format_number(s.cos.c1) << ','
       << format_number(s.cos.c0 - s.cos.c1);
    for (const auto* coeffs : {&r.a, &r.b}) {
      for (int j = 0; j < kCoefficientColumns; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        os << ',' << format_number(idx < coeffs->size() ? (*coeffs)[idx] : 0.0);
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string pair_csv(const PairSweepOptions& opts, const BasisTruncation& trunc) {
  const bool sweep_alpha = opts.sweep == "alpha";
  if (!sweep_alpha && opts.sweep != "y") throw InvalidArgument("--sweep must be 'y' or 'alpha'");
  const ReducedTemperature z{opts.z};
  PairConfig base{ReducedField{opts.x}, ReducedField{opts.x_prime}, opts.y, deg_to_rad(opts.alpha_deg)};
  base.validate();
  const auto sites = PairSites::solve(base, trunc);
  const auto q = QubitParameters::from(sites.site);
  const auto qp = QubitParameters::from(sites.site_prime);
  const auto grid = opts.range.values();

  const auto rows = parallel_map<std::string>(grid.size(), [&](std::size_t i) {
    PairConfig cfg = base;
    if (sweep_alpha) {
      cfg.alpha = deg_to_rad(grid[i]);
    } else {
      cfg.y = grid[i];
    }
    cfg.validate();
    const double f = cfg.effective_coupling();
    const auto eig = diagonalize_pair(sites, f, cfg.is_symmetric());
    const auto conc = eigenstate_concurrences(eig);
    const double thermal = concurrence(thermal_density_matrix(eig, z));

    std::string line = format_number(grid[i]);
    for (const double e : eig.energies) line += ',' + format_number(e);
    for (const double c : conc) line += ',' + format_number(c);
    line += ',' + format_number(delta_omega(q, qp, f));
    line += ',' + format_number(thermal);
    return line + '\n';
  });

  std::string out = sweep_alpha ? "alpha_deg" : "y";
  out += ",E1,E2,E3,E4,C1,C2,C3,C4,dOmega,C12_T\n";
  for (const auto& r : rows) out += r;
  return out;
}

std::string thermal_map_csv(double x, const SweepRange& y_range, const SweepRange& z_range,
                            const BasisTruncation& trunc) {
  const auto ys = y_range.values();
  const auto zs = z_range.values();
  for (const double z : zs) ReducedTemperature{z};
  const SiteProperties site = site_properties(ReducedField{x}, trunc);
  const PairSites sites{site, site};

  const auto blocks = parallel_map<std::string>(ys.size(), [&](std::size_t i) {
    if (ys[i] < 0.0) throw InvalidArgument("coupling y must be non-negative");
    const auto eig = diagonalize_pair(sites, ys[i], true);
    const double ground = concurrence(thermal_density_matrix(eig, ReducedTemperature{0.0}));
    std::string block;
    for (const double z : zs) {
      const double c = concurrence(thermal_density_matrix(eig, ReducedTemperature{z}));
      const double norm = ground > 0.0 ? c / ground : 0.0;
      block += format_number(ys[i]) + ',' + format_number(z) + ',' + format_number(c) + ',' +
               format_number(norm) + '\n';
    }
    return block;
  });

  std::string out = "y,z,C12,C12_norm\n";
  for (const auto& b : blocks) out += b;
  return out;
}

std::string critical_map_csv(const SweepRange& x_range, const SweepRange& z_range,
                             const BasisTruncation& trunc) {
  const auto xs = x_range.values();
  const auto zs = z_range.values();
  const auto blocks = parallel_map<std::string>(xs.size(), [&](std::size_t i) {
    const SiteProperties site = site_properties(ReducedField{xs[i]}, trunc);
    std::string block;
    for (const double z : zs) {
      double y0 = std::numeric_limits<double>::quiet_NaN();
      try {
        y0 = critical_coupling(site, ReducedTemperature{z});
      } catch (const NoOnsetFound&) {
        // Onset beyond y = 1: left as nan in the grid.
      }
      block += format_number(xs[i]) + ',' + format_number(z) + ',' + format_number(y0) + '\n';
    }
    return block;
  });
  std::string out = "x,z,y0\n";
  for (const auto& b : blocks) out += b;
  return out;
}

std::string fit_json(std::string_view model_text, int points, double x_max,
                     const BasisTruncation& trunc) {
  const ModelFamily model = parse_model(model_text);
  const FitResult fit = fit_exact_curve(model, points, x_max, trunc);
  const ReferenceFit& ref = reference_parameters(model);

  std::vector<double> deviation;
  for (std::size_t k = 0; k < fit.parameters.size(); ++k) {
    deviation.push_back(std::abs(fit.parameters[k] - ref.values[k]) / ref.ci_half_widths[k]);
  }
  nlohmann::ordered_json j;
  j["model"] = model_name(model);
  j["parameter_names"] = parameter_names(model);
  j["params"] = fit.parameters;
  j["ci"] = fit.confidence_half_widths;
  j["chi2"] = fit.chi_square;
  j["r2"] = fit.r_squared;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["grid"] = {{"points", points}, {"x_min", 0.0}, {"x_max", x_max}};
  j["reference"] = {{"params", ref.values}, {"ci", ref.ci_half_widths}, {"r2", ref.r_squared}};
  j["deviation_in_ci_units"] = deviation;
  return j.dump(2) + '\n';
}

std::string molecule_json(const MoleculeRequest& req, const BasisTruncation& trunc) {
  std::vector<MoleculeSpec> extra;
  if (!req.config_path.empty()) {
    std::ifstream in(req.config_path);
    if (!in) throw IoError("cannot open molecule config '" + req.config_path + "'");
    extra = load_molecules(in);
  }
  const MoleculeSpec spec = find_molecule(req.name, extra);
  if (!(req.step >= 0.0)) throw InvalidArgument("--step must be non-negative");
  const ReducedTriple r = to_reduced(spec, req.field_kv_per_cm, req.temperature_k);
  const double x_prime = r.x * (1.0 + req.step);

  const PairConfig cfg{ReducedField{r.x}, ReducedField{x_prime}, r.y, deg_to_rad(req.alpha_deg)};
  const TransitionSet t = transition_frequencies(cfg, trunc);
  const double dw_khz = khz_from_reduced(t.delta_omega, spec.b_cm1);

  nlohmann::ordered_json j;
  j["name"] = spec.name;
  j["dipole_debye"] = spec.dipole_debye;
  j["b_cm1"] = spec.b_cm1;
  j["lattice_wavelength_um"] = spec.lattice_wavelength_um;
  j["field_kv_per_cm"] = req.field_kv_per_cm;
  j["temperature_k"] = req.temperature_k;
  j["reduced"] = {{"x", r.x}, {"y", r.y}, {"z", r.z}};
  if (spec.reported_y) j["reported_y"] = *spec.reported_y;
  j["x_prime"] = x_prime;
  j["alpha_deg"] = req.alpha_deg;
  j["delta_omega_over_b"] = t.delta_omega;
  j["delta_omega_khz"] = dw_khz;
  j["addressing_gap_over_b"] = t.addressing_gap;
  j["addressing_gap_khz"] = khz_from_reduced(t.addressing_gap, spec.b_cm1);
  j["feasible_window_khz"] = {20.0, 60.0};
  j["in_window"] = std::abs(dw_khz) >= 20.0 && std::abs(dw_khz) <= 60.0;
  return j.dump(2) + '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pendular-state qubits of polar molecules: spectra, entanglement and fits"};
  app.require_subcommand(1);

  int jmax = 0;
  std::string out_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--jmax", jmax, "Initial basis truncation (overrides PENDULAR_JMAX)")
        ->check(CLI::Range(2, 400));
    sub->add_option("--out", out_path, "Output file (default: stdout)");
  };

  std::string range_text = "0:8:81";
  auto* pend = app.add_subcommand("pendular", "Single-site energies, cosine elements and coefficients");
  pend->add_option("--range", range_text, "x sweep as start:stop:points");
  common(pend);

  PairSweepOptions pair;
  std::string pair_range;
  auto* pair_cmd = app.add_subcommand("pair", "Pair eigenenergies, concurrences and frequency shift");
  pair_cmd->add_option("--x", pair.x, "Reduced field at site 1")->required();
  pair_cmd->add_option("--xprime", pair.x_prime, "Reduced field at site 2 (default: --x)");
  pair_cmd->add_option("--y", pair.y, "Coupling when sweeping alpha");
  pair_cmd->add_option("--alpha-deg", pair.alpha_deg, "Field angle when sweeping y");
  pair_cmd->add_option("--z", pair.z, "Reduced temperature for the C12_T column");
  pair_cmd->add_option("--sweep", pair.sweep, "Swept variable: y or alpha")
      ->check(CLI::IsMember({"y", "alpha"}));
  pair_cmd->add_option("--range", pair_range, "Sweep as start:stop:points (alpha in degrees)")
      ->required();
  common(pair_cmd);

  double tm_x = 0.0;
  std::string tm_y, tm_z, tm_xr;
  bool critical = false;
  auto* tm = app.add_subcommand("thermal-map", "Thermal concurrence grid or critical-coupling grid");
  tm->add_option("--x", tm_x, "Reduced field (both sites)");
  tm->add_option("--range", tm_y, "y sweep as start:stop:points");
  tm->add_option("--zrange", tm_z, "z sweep as start:stop:points")->required();
  tm->add_option("--xrange", tm_xr, "x sweep for --critical");
  tm->add_flag("--critical", critical, "Emit the onset coupling y0(x, z) instead");
  common(tm);

  std::string source = "fitted";
  auto* t1 = app.add_subcommand("table1", "CNOT feasibility table (text on stdout, CSV to --out)");
  t1->add_option("--source", source, "Single-site data: fitted or exact")
      ->check(CLI::IsMember({"fitted", "exact"}));
  common(t1);

  std::string model;
  int fit_points = kFitGridPoints;
  double fit_xmax = kFitGridMax;
  auto* fit = app.add_subcommand("fit", "Levenberg-Marquardt fit of a model to its exact curve");
  fit->add_option("--model", model, "K_SIGMOID, W_GAP, C0_POWER or C1_DOUBLE_SIGMOID")->required();
  fit->add_option("--points", fit_points, "Grid points")->check(CLI::Range(8, 100000));
  fit->add_option("--xmax", fit_xmax, "Grid end")->check(CLI::PositiveNumber);
  common(fit);

  MoleculeRequest mol;
  auto* mol_cmd = app.add_subcommand("molecule", "Reduced variables and frequency shift for a molecule");
  mol_cmd->add_option("--name", mol.name, "Molecule name")->required();
  mol_cmd->add_option("--config", mol.config_path, "JSON file with extra molecules");
  mol_cmd->add_option("--field", mol.field_kv_per_cm, "Field in kV/cm")->required();
  mol_cmd->add_option("--temperature", mol.temperature_k, "Temperature in K");
  mol_cmd->add_option("--step", mol.step, "Relative field step to the second site");
  mol_cmd->add_option("--alpha-deg", mol.alpha_deg, "Field angle in degrees");
  common(mol_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const BasisTruncation trunc = truncation_for(jmax);
    if (pend->parsed()) {
      write_output(out_path, pendular_csv(SweepRange::parse(range_text).values(), trunc), out);
    } else if (pair_cmd->parsed()) {
      if (pair_cmd->count("--xprime") == 0) pair.x_prime = pair.x;
      pair.range = SweepRange::parse(pair_range);
      write_output(out_path, pair_csv(pair, trunc), out);
    } else if (tm->parsed()) {
      const auto zr = SweepRange::parse(tm_z);
      if (critical) {
        if (tm_xr.empty()) throw InvalidArgument("--critical needs --xrange");
        write_output(out_path, critical_map_csv(SweepRange::parse(tm_xr), zr, trunc), out);
      } else {
        if (tm_y.empty()) throw InvalidArgument("thermal-map needs --range for y");
        write_output(out_path, thermal_map_csv(tm_x, SweepRange::parse(tm_y), zr, trunc), out);
      }
    } else if (t1->parsed()) {
      const auto reports =
          standard_cnot_reports(source == "exact" ? SiteSource::Exact : SiteSource::Fitted, trunc);
      out << format_cnot_text(reports);
      if (!out_path.empty()) write_output(out_path, format_cnot_csv(reports), out);
    } else if (fit->parsed()) {
      write_output(out_path, fit_json(model, fit_points, fit_xmax, trunc), out);
    } else if (mol_cmd->parsed()) {
      write_output(out_path, molecule_json(mol, trunc), out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return kFit;
  } catch (const NotFound& e) {
    err << "lookup failed: " << e.what() << '\n';
    return kLookup;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pendular");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pendular::cli
