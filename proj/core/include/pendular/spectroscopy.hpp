#pragma once

// Qubit transition frequencies of a coupled pair to first order in the
// dipole-dipole coupling, the conditional shift that enables a CNOT gate,
// and the gate-feasibility table built from them.

#include <span>
#include <string>
#include <vector>

#include "pendular/dipole_pair.hpp"

namespace pendular {

/// The three single-site numbers the first-order frequencies depend on.
struct QubitParameters {
  double x = 0.0;
  double gap = 0.0;  // (W1 - W0) / B
  double c0 = 0.0;
  double c1 = 0.0;

  static QubitParameters from(const SiteProperties& site);
};

/// All frequencies in units of B.
///   w1: |00> -> |01>   w2: |01> -> |11>   w3: |00> -> |10>   w4: |10> -> |11>
/// The conditional shift satisfies delta_omega = w2 - w3 = w4 - w1.
struct TransitionSet {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double w4 = 0.0;
  double delta_omega = 0.0;
  /// w1 - w3, the splitting that distinguishes the two sites.
  double addressing_gap = 0.0;
};

/// Diagonal expectation-value differences with omega_alpha = y (1 - 3 cos^2 alpha).
TransitionSet transition_frequencies(const QubitParameters& site, const QubitParameters& site_prime,
                                     double omega_alpha);
TransitionSet transition_frequencies(const PairConfig& cfg, const BasisTruncation& trunc = {});

/// omega_alpha (C1 - C0)(C1' - C0').
double delta_omega(const QubitParameters& site, const QubitParameters& site_prime,
                   double omega_alpha);
double delta_omega(const PairConfig& cfg, const BasisTruncation& trunc = {});

/// Same transitions from eigenvalue differences of the full 4x4 pair
/// Hamiltonian; each eigenvector is matched to the product state it
/// overlaps most. Agrees with the first-order result up to O(y^2).
TransitionSet exact_transition_frequencies(const PairConfig& cfg, const BasisTruncation& trunc = {});

struct AlphaSweepRow {
  double alpha = 0.0;
  double delta_omega = 0.0;
  double ground_concurrence = 0.0;
};

/// alpha values must lie in [0, pi/2].
std::vector<AlphaSweepRow> alpha_sweep(ReducedField x, ReducedField x_prime, double y,
                                       std::span<const double> alpha_grid,
                                       const BasisTruncation& trunc = {});

/// Where the single-site numbers in a gate report come from: the reference
/// interpolating fits or the exact pendular solution.
enum class SiteSource { Fitted, Exact };

QubitParameters qubit_parameters(double x, SiteSource source, const BasisTruncation& trunc = {});

struct CnotPairRow {
  double x_prime = 0.0;
  TransitionSet transitions;
  /// sqrt(K(x) K(x')) omega_alpha, with K from the exact pair solution.
  double concurrence = 0.0;
  /// Lower bounds on the two pulse durations, in units of 1/B.
  double tau31 = 0.0;
  double tau32 = 0.0;
};

struct CnotReport {
  double omega_alpha = 0.0;
  SiteSource source = SiteSource::Fitted;
  QubitParameters site;
  std::vector<QubitParameters> partners;
  std::vector<CnotPairRow> rows;
};

CnotReport cnot_report(double x, std::span<const double> x_primes, double omega_alpha,
                       SiteSource source = SiteSource::Fitted, const BasisTruncation& trunc = {});

/// Aligned text table: one column per field value, one row per quantity.
std::string format_cnot_text(std::span<const CnotReport> reports);
/// Long-form CSV: x,x_prime,quantity,value.
std::string format_cnot_csv(std::span<const CnotReport> reports);

/// The two reports of the standard example: x = 1 with x' = 1.01, 1.10 and
/// x = 3 with x' = 3.03, 3.30, at omega_alpha = 1e-5.
std::vector<CnotReport> standard_cnot_reports(SiteSource source = SiteSource::Fitted,
                                              const BasisTruncation& trunc = {});

}  // namespace pendular
