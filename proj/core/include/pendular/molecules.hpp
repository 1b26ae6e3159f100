#pragma once

// Conversion from laboratory units to the reduced ratios x, y, z and a small
// registry of candidate molecules.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pendular {

struct MoleculeSpec {
  std::string name;
  double dipole_debye = 0.0;
  /// Rotational constant B in cm^-1.
  double b_cm1 = 0.0;
  /// Optical lattice wavelength in microns; the site spacing is half of it.
  double lattice_wavelength_um = 0.0;
  /// Literature estimate of y, when that is all that is known.
  std::optional<double> reported_y;
  /// False for entries whose constants must come from a user config file.
  bool properties_known = true;

  [[nodiscard]] double site_spacing_um() const noexcept { return 0.5 * lattice_wavelength_um; }
  /// Throws InvalidSpec unless all constants are known and positive.
  void validate() const;
};

struct ReducedTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// x = 0.0168 mu E / B, y = 5.04e-9 mu^2 / (r^3 B), z = 0.695 T / B.
double reduced_field(double dipole_debye, double field_kv_per_cm, double b_cm1);
double reduced_coupling(double dipole_debye, double spacing_um, double b_cm1);
double reduced_temperature(double temperature_k, double b_cm1);

/// Throws InvalidSpec if the spec is incomplete or a field/temperature is
/// negative.
ReducedTriple to_reduced(const MoleculeSpec& spec, double field_kv_per_cm, double temperature_k);

/// 1 cm^-1 in kHz.
inline constexpr double kKhzPerInverseCm = 2.99792458e7;

/// Converts a frequency in units of B to kHz.
double khz_from_reduced(double value_over_b, double b_cm1);

/// Built-in entries: SrO with its constants; KCs and CsI carry only a
/// literature y estimate.
const std::vector<MoleculeSpec>& registry();

/// Looks a name up in extra (first) and then in the built-in registry.
/// Throws NotFound.
MoleculeSpec find_molecule(std::string_view name, const std::vector<MoleculeSpec>& extra = {});

/// Reads a JSON array of {name, dipole_debye, b_cm1, lattice_wavelength_um}.
/// Throws InvalidSpec on malformed input.
std::vector<MoleculeSpec> load_molecules(std::istream& in);
std::vector<MoleculeSpec> load_molecules_file(const std::string& path);

}  // namespace pendular
