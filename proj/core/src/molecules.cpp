#include "pendular/molecules.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pendular/errors.hpp"

namespace pendular {

namespace {

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw InvalidSpec(std::string(what) + " must be positive, got " + std::to_string(v));
  }
}

void require_non_negative(double v, const char* what) {
  if (!(std::isfinite(v) && v >= 0.0)) {
    throw InvalidSpec(std::string(what) + " must be non-negative, got " + std::to_string(v));
  }
}

}  // namespace

void MoleculeSpec::validate() const {
  if (name.empty()) throw InvalidSpec("molecule name is empty");
  if (!properties_known) {
    throw InvalidSpec(name + " has no built-in constants; supply them with a config file");
  }
  require_positive(dipole_debye, "dipole_debye");
  require_positive(b_cm1, "b_cm1");
  require_positive(lattice_wavelength_um, "lattice_wavelength_um");
}

double reduced_field(double dipole_debye, double field_kv_per_cm, double b_cm1) {
  return 0.0168 * dipole_debye * field_kv_per_cm / b_cm1;
}

double reduced_coupling(double dipole_debye, double spacing_um, double b_cm1) {
  return 5.04e-9 * dipole_debye * dipole_debye / (spacing_um * spacing_um * spacing_um) / b_cm1;
}

double reduced_temperature(double temperature_k, double b_cm1) {
  return 0.695 * temperature_k / b_cm1;
}

ReducedTriple to_reduced(const MoleculeSpec& spec, double field_kv_per_cm, double temperature_k) {
  spec.validate();
  require_non_negative(field_kv_per_cm, "field");
  require_non_negative(temperature_k, "temperature");
  return {reduced_field(spec.dipole_debye, field_kv_per_cm, spec.b_cm1),
          reduced_coupling(spec.dipole_debye, spec.site_spacing_um(), spec.b_cm1),
          reduced_temperature(temperature_k, spec.b_cm1)};
}

double khz_from_reduced(double value_over_b, double b_cm1) {
  require_positive(b_cm1, "b_cm1");
  return value_over_b * b_cm1 * kKhzPerInverseCm;
}

const std::vector<MoleculeSpec>& registry() {
  static const std::vector<MoleculeSpec> entries{
      {"SrO", 8.9, 0.33, 1.0, std::nullopt, true},
      {"KCs", 0.0, 0.0, 0.0, 4e-6, false},
      {"CsI", 0.0, 0.0, 0.0, 2e-4, false},
  };
  return entries;
}

MoleculeSpec find_molecule(std::string_view name, const std::vector<MoleculeSpec>& extra) {
  for (const auto& m : extra) {
    if (m.name == name) return m;
  }
  for (const auto& m : registry()) {
    if (m.name == name) return m;
  }
  throw NotFound("unknown molecule '" + std::string(name) + "'");
}

std::vector<MoleculeSpec> load_molecules(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("molecule config is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidSpec("molecule config must be a JSON array");

  std::vector<MoleculeSpec> out;
  for (const auto& item : doc) {
    try {
      MoleculeSpec m;
      m.name = item.at("name").get<std::string>();
      m.dipole_debye = item.at("dipole_debye").get<double>();
      m.b_cm1 = item.at("b_cm1").get<double>();
      m.lattice_wavelength_um = item.at("lattice_wavelength_um").get<double>();
      m.validate();
      out.push_back(std::move(m));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidSpec(std::string("bad molecule entry: ") + e.what());
    }
  }
  return out;
}

std::vector<MoleculeSpec> load_molecules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open molecule config '" + path + "'");
  return load_molecules(in);
}

}  // namespace pendular
