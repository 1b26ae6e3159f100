#include "pendular/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "pendular/entanglement.hpp"
#include "pendular/errors.hpp"

namespace pendular {

std::string_view model_name(ModelFamily model) {
  switch (model) {
    case ModelFamily::KSigmoid: return "K_SIGMOID";
    case ModelFamily::WGap: return "W_GAP";
    case ModelFamily::C0Power: return "C0_POWER";
    case ModelFamily::C1DoubleSigmoid: return "C1_DOUBLE_SIGMOID";
  }
  throw InvalidArgument("unknown model family");
}

ModelFamily parse_model(std::string_view name) {
  for (const auto m : kAllModels) {
    if (model_name(m) == name) return m;
  }
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "'; expected K_SIGMOID, W_GAP, C0_POWER or C1_DOUBLE_SIGMOID");
}

int model_arity(ModelFamily model) {
  return model == ModelFamily::C1DoubleSigmoid ? 7 : 4;
}

std::vector<std::string> parameter_names(ModelFamily model) {
  switch (model) {
    case ModelFamily::KSigmoid: return {"A1", "A2", "x0", "dx"};
    case ModelFamily::WGap:
    case ModelFamily::C0Power: return {"A1", "A2", "x0", "p"};
    case ModelFamily::C1DoubleSigmoid: return {"A0", "A1", "A2", "x1", "x2", "dx1", "dx2"};
  }
  throw InvalidArgument("unknown model family");
}

double evaluate_model(ModelFamily model, std::span<const double> t, double x) {
  if (static_cast<int>(t.size()) != model_arity(model)) {
    throw InvalidArgument(std::string(model_name(model)) + " expects " +
                          std::to_string(model_arity(model)) + " parameters");
  }
  switch (model) {
    case ModelFamily::KSigmoid:
      return t[0] + t[1] / (1.0 + std::exp((x - t[2]) / t[3]));
    case ModelFamily::WGap:
    case ModelFamily::C0Power:
      return t[0] + t[1] / (1.0 + std::pow(x / t[2], t[3]));
    case ModelFamily::C1DoubleSigmoid:
      return t[0] + t[1] / (1.0 + std::exp((x - t[3]) / t[5])) +
             t[2] / (1.0 + std::exp(-(x - t[4]) / t[6]));
  }
  throw InvalidArgument("unknown model family");
}

double chi_square(std::span<const Sample> data, ModelFamily model, std::span<const double> theta) {
  if (data.empty()) throw InvalidArgument("chi-square needs at least one sample");
  double sum = 0.0;
  for (const auto& s : data) {
    const double r = s.y - evaluate_model(model, theta, s.x);
    sum += r * r;
  }
  return sum;
}

double r_squared(std::span<const Sample> data, ModelFamily model, std::span<const double> theta) {
  const double chi2 = chi_square(data, model, theta);
  double mean = 0.0;
  for (const auto& s : data) mean += s.y;
  mean /= static_cast<double>(data.size());
  double total = 0.0;
  for (const auto& s : data) total += (s.y - mean) * (s.y - mean);
  return total > 0.0 ? 1.0 - chi2 / total : (chi2 == 0.0 ? 1.0 : 0.0);
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Problem {
  std::span<const Sample> data;
  ModelFamily model;

  [[nodiscard]] VectorXd residuals(const VectorXd& theta) const {
    VectorXd r(static_cast<Eigen::Index>(data.size()));
    const std::span<const double> t(theta.data(), static_cast<std::size_t>(theta.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = data[i].y - evaluate_model(model, t, data[i].x);
    }
    return r;
  }

  // Jacobian of the model (not of the residuals) by forward differences.
  [[nodiscard]] MatrixXd jacobian(const VectorXd& theta, const VectorXd& r0, double step) const {
    MatrixXd j(r0.size(), theta.size());
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      VectorXd shifted = theta;
      const double h = step * std::max(1.0, std::abs(theta(k)));
      shifted(k) += h;
      j.col(k) = (r0 - residuals(shifted)) / h;
    }
    return j;
  }
};

std::vector<double> to_vector(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

FitResult levenberg_marquardt(std::span<const Sample> data, ModelFamily model,
                              std::span<const double> theta0, const LmOptions& opts) {
  const int p = model_arity(model);
  if (static_cast<int>(theta0.size()) != p) {
    throw InvalidArgument("initial guess has " + std::to_string(theta0.size()) +
                          " entries, model needs " + std::to_string(p));
  }
  if (static_cast<int>(data.size()) < p) {
    throw InvalidArgument("need at least as many samples as parameters");
  }
  for (const double v : theta0) {
    if (!std::isfinite(v)) throw InvalidArgument("initial guess must be finite");
  }

  const Problem prob{data, model};
  VectorXd theta = Eigen::Map<const VectorXd>(theta0.data(), p);
  VectorXd r = prob.residuals(theta);
  double chi2 = r.squaredNorm();
  if (!std::isfinite(chi2)) throw FitError("model is not finite at the initial guess");

  double lambda = opts.lambda_initial;
  bool converged = false;
  int iter = 0;
  double grad_norm = 0.0;
  const MatrixXd eye = MatrixXd::Identity(p, p);

  while (!converged && iter < opts.max_iterations) {
    ++iter;
    const MatrixXd j = prob.jacobian(theta, r, opts.jacobian_step);
    const VectorXd g = j.transpose() * r;
    grad_norm = g.lpNorm<Eigen::Infinity>();
    if (grad_norm < opts.gradient_tolerance || chi2 == 0.0) {
      converged = true;
      break;
    }
    const MatrixXd a = j.transpose() * j;

    for (;;) {
      Eigen::LDLT<MatrixXd> ldlt(a + lambda * eye);
      VectorXd delta;
      bool solved = ldlt.info() == Eigen::Success && ldlt.isPositive();
      if (solved) {
        delta = ldlt.solve(g);
        solved = delta.allFinite();
      }
      if (!solved) {
        if (lambda >= opts.lambda_cap) {
          throw SingularNormalMatrix("normal matrix singular at damping " + std::to_string(lambda));
        }
        lambda *= opts.lambda_factor;
        continue;
      }

      const VectorXd trial = theta + delta;
      const VectorXd r_trial = prob.residuals(trial);
      const double chi2_trial = r_trial.squaredNorm();
      if (std::isfinite(chi2_trial) && chi2_trial < chi2) {
        const double rel = (chi2 - chi2_trial) / chi2;
        theta = trial;
        r = r_trial;
        chi2 = chi2_trial;
        lambda /= opts.lambda_factor;
        if (rel < opts.relative_tolerance) converged = true;
        break;
      }
      lambda *= opts.lambda_factor;
      if (lambda > opts.lambda_cap) {
        // No descent direction is left at any damping: the iterate is a
        // minimum to working precision.
        converged = true;
        break;
      }
    }
  }
  if (!converged) {
    throw MaxIterations(std::string(model_name(model)) + " fit did not converge in " +
                        std::to_string(opts.max_iterations) + " iterations");
  }

  FitResult out;
  out.model = model;
  out.parameters = to_vector(theta);
  out.chi_square = chi2;
  out.iterations = iter;
  out.converged = true;
  out.gradient_norm = grad_norm;
  out.r_squared = r_squared(data, model, out.parameters);

  const MatrixXd j = prob.jacobian(theta, r, opts.jacobian_step);
  const auto n = static_cast<double>(data.size());
  const double s2 = n > p ? chi2 / (n - p) : 0.0;
  Eigen::LDLT<MatrixXd> ldlt(j.transpose() * j);
  out.confidence_half_widths.assign(static_cast<std::size_t>(p),
                                    std::numeric_limits<double>::quiet_NaN());
  if (ldlt.info() == Eigen::Success) {
    const MatrixXd cov = s2 * ldlt.solve(eye);
    for (int k = 0; k < p; ++k) {
      out.confidence_half_widths[static_cast<std::size_t>(k)] = 1.96 * std::sqrt(std::max(0.0, cov(k, k)));
    }
  }
  return out;
}

const ReferenceFit& reference_parameters(ModelFamily model) {
  static const ReferenceFit k{{0.01092, 0.21953, 0.96578, 0.97429}, {0.0003, 0.006, 0.05, 0.03}, 0.9981};
  static const ReferenceFit w{{12.42379, -10.47646, 8.77516, 1.5867},
                              {0.0533, 0.0534, 0.0534, 0.00527}, 0.9999};
  static const ReferenceFit c0{{0.84855, -0.84355, 1.6339, 1.2459},
                               {0.00145, 0.00180, 0.00508, 0.00539}, 0.99994};
  static const ReferenceFit c1{{-0.75212, 1.04192, 1.14092, -0.16241, 3.1232, 0.90544, 2.76286},
                               {0.0323, 0.0336, 0.0325, 0.0224, 0.124, 0.0136, 0.0496}, 1.0};
  switch (model) {
    case ModelFamily::KSigmoid: return k;
    case ModelFamily::WGap: return w;
    case ModelFamily::C0Power: return c0;
    case ModelFamily::C1DoubleSigmoid: return c1;
  }
  throw InvalidArgument("unknown model family");
}

double evaluate_fitted(ModelFamily model, double x) {
  return evaluate_model(model, reference_parameters(model).values, x);
}

std::vector<double> default_initial_guess(ModelFamily model) {
  switch (model) {
    case ModelFamily::KSigmoid: return {0.01, 0.2, 1.0, 1.0};
    case ModelFamily::WGap: return {12.0, -10.0, 9.0, 1.5};
    case ModelFamily::C0Power: return {0.8, -0.8, 1.6, 1.2};
    case ModelFamily::C1DoubleSigmoid: return {-0.75, 1.0, 1.1, -0.2, 3.0, 0.9, 2.8};
  }
  throw InvalidArgument("unknown model family");
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2) throw InvalidArgument("grid needs at least 2 points");
  if (!(a < b)) throw InvalidArgument("grid start must be below its end");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + i * h;
  g.back() = b;
  return g;
}

std::vector<Sample> exact_curve(ModelFamily model, std::span<const double> grid,
                                const BasisTruncation& trunc) {
  std::vector<Sample> out;
  out.reserve(grid.size());
  for (const double x : grid) {
    const SiteProperties site = site_properties(ReducedField{x}, trunc);
    double y = 0.0;
    switch (model) {
      case ModelFamily::KSigmoid: y = weak_coupling_slope(site); break;
      case ModelFamily::WGap: y = site.gap(); break;
      case ModelFamily::C0Power: y = site.cos.c0; break;
      case ModelFamily::C1DoubleSigmoid: y = site.cos.c1; break;
    }
    out.push_back({x, y});
  }
  return out;
}

FitResult fit_exact_curve(ModelFamily model, int points, double x_max,
                          const BasisTruncation& trunc) {
  const auto grid = uniform_grid(0.0, x_max, points);
  const auto data = exact_curve(model, grid, trunc);
  return levenberg_marquardt(data, model, default_initial_guess(model));
}

}  // namespace pendular
