#pragma once

// Least-squares fits of the closed-form interpolating families used for
// K(x), W1 - W0, C0 and C1, via a plain Levenberg-Marquardt iteration.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pendular/pendular_core.hpp"

namespace pendular {

enum class ModelFamily {
  /// A1 + A2 / (1 + exp((x - x0) / dx))
  KSigmoid,
  /// A1 + A2 / (1 + (x / x0)^p)
  WGap,
  /// Same form as WGap, fitted to C0.
  C0Power,
  /// A0 + A1 / (1 + exp((x - x1) / dx1)) + A2 / (1 + exp(-(x - x2) / dx2)),
  /// parameters ordered (A0, A1, A2, x1, x2, dx1, dx2).
  C1DoubleSigmoid,
};

inline constexpr std::array<ModelFamily, 4> kAllModels{
    ModelFamily::KSigmoid, ModelFamily::WGap, ModelFamily::C0Power,
    ModelFamily::C1DoubleSigmoid};

/// "K_SIGMOID", "W_GAP", "C0_POWER", "C1_DOUBLE_SIGMOID".
std::string_view model_name(ModelFamily model);
/// Inverse of model_name; throws InvalidArgument on unknown names.
ModelFamily parse_model(std::string_view name);
int model_arity(ModelFamily model);
std::vector<std::string> parameter_names(ModelFamily model);

/// Throws InvalidArgument if theta has the wrong length.
double evaluate_model(ModelFamily model, std::span<const double> theta, double x);

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

/// Sum of squared residuals. Throws InvalidArgument on empty data.
double chi_square(std::span<const Sample> data, ModelFamily model, std::span<const double> theta);
double r_squared(std::span<const Sample> data, ModelFamily model, std::span<const double> theta);

struct LmOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-12;
  double gradient_tolerance = 1e-10;
  double lambda_initial = 1e-3;
  double lambda_factor = 10.0;
  double lambda_cap = 1e12;
  double jacobian_step = 1e-7;
};

struct FitResult {
  ModelFamily model = ModelFamily::KSigmoid;
  std::vector<double> parameters;
  /// 95% half-widths from the linearized covariance.
  std::vector<double> confidence_half_widths;
  double chi_square = 0.0;
  double r_squared = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Local chi-square minimizer. Throws InvalidArgument on bad inputs,
/// SingularNormalMatrix if J^T J + lambda I cannot be factored even at the
/// damping cap, and MaxIterations if no stopping test fires.
FitResult levenberg_marquardt(std::span<const Sample> data, ModelFamily model,
                              std::span<const double> theta0, const LmOptions& opts = {});

struct ReferenceFit {
  std::vector<double> values;
  std::vector<double> ci_half_widths;
  double r_squared = 0.0;
};

/// Reference parameter sets for the four families (pendular column for K).
const ReferenceFit& reference_parameters(ModelFamily model);

/// evaluate_model with the reference parameters.
double evaluate_fitted(ModelFamily model, double x);

/// Starting point used when fitting exact curves.
std::vector<double> default_initial_guess(ModelFamily model);

/// n >= 2 uniformly spaced points from a to b inclusive.
std::vector<double> uniform_grid(double a, double b, int n);

/// Exact curve sampled on grid: K(x), W1 - W0, C0 or C1.
std::vector<Sample> exact_curve(ModelFamily model, std::span<const double> grid,
                                const BasisTruncation& trunc = {});

inline constexpr int kFitGridPoints = 161;
inline constexpr double kFitGridMax = 8.0;

/// Fits the model to its exact curve on [0, x_max] from the default start.
FitResult fit_exact_curve(ModelFamily model, int points = kFitGridPoints,
                          double x_max = kFitGridMax, const BasisTruncation& trunc = {});

}  // namespace pendular
