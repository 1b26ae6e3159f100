#pragma once

// Command-line front end. Everything lives in a library so tests can drive
// the commands in-process.

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pendular/pendular_core.hpp"

namespace pendular::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kFit = 3,
  kLookup = 4,
  kNonConvergence = 5,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "a:b:n" with a < b and n >= 2.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  static SweepRange parse(std::string_view text);
  [[nodiscard]] std::vector<double> values() const;
};

/// Default truncation, with PENDULAR_JMAX applied when set.
BasisTruncation truncation_from_env();
/// jmax > 0 overrides the environment.
BasisTruncation truncation_for(int jmax);

/// printf "%.10g".
std::string format_number(double v);

std::string pendular_csv(const std::vector<double>& xs, const BasisTruncation& trunc);

struct PairSweepOptions {
  double x = 0.0;
  double x_prime = 0.0;
  /// Fixed coupling when sweeping alpha.
  double y = 0.0;
  /// Fixed angle (degrees) when sweeping y.
  double alpha_deg = 90.0;
  double z = 0.0;
  /// "y" or "alpha".
  std::string sweep = "y";
  SweepRange range;
};
std::string pair_csv(const PairSweepOptions& opts, const BasisTruncation& trunc);

std::string thermal_map_csv(double x, const SweepRange& y_range, const SweepRange& z_range,
                            const BasisTruncation& trunc);
std::string critical_map_csv(const SweepRange& x_range, const SweepRange& z_range,
                             const BasisTruncation& trunc);

std::string fit_json(std::string_view model, int points, double x_max, const BasisTruncation& trunc);

struct MoleculeRequest {
  std::string name;
  std::string config_path;
  double field_kv_per_cm = 0.0;
  double temperature_k = 0.0;
  /// Relative field step to the second site: x' = x (1 + step).
  double step = 0.01;
  double alpha_deg = 90.0;
};
std::string molecule_json(const MoleculeRequest& req, const BasisTruncation& trunc);

/// Parses argv, runs the subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pendular::cli
