#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "pendular/entanglement.hpp"
#include "pendular/errors.hpp"
#include "pendular/spectroscopy.hpp"

using namespace pendular;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(TransitionFrequencies, ShiftIdentityHoldsToRounding) {
  for (const double x : {0.5, 1.0, 3.0, 6.0}) {
    for (const double xp : {x, x * 1.01, x * 1.3}) {
      for (const double alpha : {0.0, 0.7, std::numbers::pi / 2}) {
        PairConfig cfg{ReducedField{x}, ReducedField{xp}, 0.37, alpha};
        const auto t = transition_frequencies(cfg);
        EXPECT_NEAR(t.w2 - t.w3, t.delta_omega, 1e-14);
        EXPECT_NEAR(t.w4 - t.w1, t.delta_omega, 1e-14);
        EXPECT_NEAR(delta_omega(cfg), t.delta_omega, 1e-15);
        EXPECT_NEAR(t.addressing_gap, t.w1 - t.w3, 0.0);
      }
    }
  }
}

TEST(TransitionFrequencies, AreDiagonalMatrixElementDifferences) {
  PairConfig cfg{ReducedField{1.2}, ReducedField{2.1}, 0.5, 1.0};
  const Matrix4 h = build_pair_hamiltonian(cfg);
  const auto t = transition_frequencies(cfg);
  EXPECT_NEAR(t.w1, h(1, 1) - h(0, 0), 1e-13);
  EXPECT_NEAR(t.w2, h(3, 3) - h(1, 1), 1e-13);
  EXPECT_NEAR(t.w3, h(2, 2) - h(0, 0), 1e-13);
  EXPECT_NEAR(t.w4, h(3, 3) - h(2, 2), 1e-13);
}

TEST(TransitionFrequencies, UncoupledSymmetricSitesAreDegenerate) {
  const auto t = transition_frequencies(PairConfig::symmetric(2.0, 0.0));
  const double gap = site_properties(ReducedField{2.0}).gap();
  for (const double w : {t.w1, t.w2, t.w3, t.w4}) EXPECT_NEAR(w, gap, 1e-14);
  EXPECT_EQ(t.delta_omega, 0.0);
}

TEST(DeltaOmega, LinearInCouplingAndAngleFactor) {
  PairConfig cfg{ReducedField{2.0}, ReducedField{2.2}, 1e-5};
  const double d1 = delta_omega(cfg);
  cfg.y = 2e-5;
  EXPECT_NEAR(delta_omega(cfg), 2 * d1, 1e-22);
  cfg.y = 1e-5;
  cfg.alpha = 0.0;
  EXPECT_NEAR(delta_omega(cfg) / d1, -2.0, 1e-12);
  cfg.alpha = kMagicAngle;
  EXPECT_NEAR(delta_omega(cfg), 0.0, 1e-20);
}

TEST(DeltaOmega, NearlyIndependentOfFieldStep) {
  const auto a = delta_omega(PairConfig{ReducedField{1.0}, ReducedField{1.01}, 1e-5});
  const auto b = delta_omega(PairConfig{ReducedField{1.0}, ReducedField{1.10}, 1e-5});
  EXPECT_LT(std::abs(a - b) / a, 0.07);
}

TEST(ExactTransitions, AgreeWithFirstOrderUpToQuadraticTerms) {
  for (const double y : {1e-4, 1e-3}) {
    PairConfig cfg{ReducedField{1.0}, ReducedField{1.5}, y};
    const auto first = transition_frequencies(cfg);
    const auto exact = exact_transition_frequencies(cfg);
    const double scale = y * y * 10;
    EXPECT_NEAR(exact.w1, first.w1, scale);
    EXPECT_NEAR(exact.w2, first.w2, scale);
    EXPECT_NEAR(exact.w3, first.w3, scale);
    EXPECT_NEAR(exact.w4, first.w4, scale);
    EXPECT_NEAR(exact.delta_omega, first.delta_omega, scale);
  }
}

TEST(AlphaSweep, AngleDependence) {
  const std::vector<double> grid{0.0, kMagicAngle, std::numbers::pi / 2};
  const auto rows = alpha_sweep(ReducedField{3.0}, ReducedField{3.0}, 1.0, grid);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_NEAR(rows[0].delta_omega / rows[2].delta_omega, -2.0, 1e-12);
  EXPECT_NEAR(rows[1].delta_omega, 0.0, 1e-15);
  EXPECT_NEAR(rows[1].ground_concurrence, 0.0, 1e-10);
  EXPECT_NEAR(rows[2].ground_concurrence, 0.0473, 5e-5);
  const std::vector<double> bad{2.0};
  EXPECT_THROW(alpha_sweep(ReducedField{1.0}, ReducedField{1.0}, 1.0, bad), InvalidArgument);
}

TEST(CnotReport, FittedRouteReproducesReferenceTable) {
  const auto reps = standard_cnot_reports();
  ASSERT_EQ(reps.size(), 2U);
  // Reference single-site rows: gap, C0, C1, C0 - C1 for x, x'_1, x'_2.
  const double site_rows[2][3][4] = {
      {{2.2709, 0.30165, -0.16467, 0.46632},
       {2.2759, 0.30404, -0.16573, 0.46977},
       {2.3218, 0.32487, -0.17461, 0.49948}},
      {{3.5614, 0.57922, -0.16362, 0.74284},
       {3.5831, 0.58149, -0.16150, 0.74298},
       {3.7789, 0.60051, -0.14115, 0.74165}}};
  const double pair_rows[2][2][3] = {{{4.99e-3, 2.19e-6, 1.20e-6}, {5.09e-2, 2.33e-6, 1.17e-6}},
                                     {{2.17e-2, 5.52e-6, 3.57e-7}, {2.17e-1, 5.51e-6, 3.34e-7}}};
  for (std::size_t r = 0; r < 2; ++r) {
    std::vector<QubitParameters> qs{reps[r].site};
    qs.insert(qs.end(), reps[r].partners.begin(), reps[r].partners.end());
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(qs[c].gap, site_rows[r][c][0], 1e-4);
      EXPECT_NEAR(qs[c].c0, site_rows[r][c][1], 1e-4);
      EXPECT_NEAR(qs[c].c1, site_rows[r][c][2], 1e-4);
      EXPECT_NEAR(qs[c].c0 - qs[c].c1, site_rows[r][c][3], 1e-4);
    }
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& row = reps[r].rows[c];
      EXPECT_LT(rel(row.transitions.addressing_gap, pair_rows[r][c][0]), 5e-3);
      EXPECT_LT(rel(row.transitions.delta_omega, pair_rows[r][c][1]), 5e-3);
      EXPECT_LT(rel(row.concurrence, pair_rows[r][c][2]), 0.05);
    }
  }
}

TEST(CnotReport, ExactRouteStaysCloseToFittedRoute) {
  const auto fitted = standard_cnot_reports(SiteSource::Fitted);
  const auto exact = standard_cnot_reports(SiteSource::Exact);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_LT(std::abs(exact[r].site.gap - fitted[r].site.gap), 0.03);
    for (std::size_t c = 0; c < 2; ++c) {
      EXPECT_LT(rel(exact[r].rows[c].transitions.delta_omega, fitted[r].rows[c].transitions.delta_omega),
                0.03);
      EXPECT_EQ(exact[r].rows[c].concurrence, fitted[r].rows[c].concurrence);
    }
  }
}

TEST(CnotReport, PulseBoundsAreReciprocalGaps) {
  const auto rep = standard_cnot_reports().front();
  const auto& row = rep.rows.front();
  EXPECT_NEAR(row.tau31 * std::abs(row.transitions.w3 - row.transitions.w1), 1.0, 1e-12);
  EXPECT_NEAR(row.tau32 * std::abs(row.transitions.w3 - row.transitions.w2), 1.0, 1e-12);
}

TEST(CnotReport, Formatting) {
  const auto reps = standard_cnot_reports();
  const auto text = format_cnot_text(reps);
  EXPECT_NE(text.find("2.2709"), std::string::npos);
  EXPECT_NE(text.find("3.5831"), std::string::npos);
  EXPECT_NE(text.find("5.52E-06"), std::string::npos);
  const auto csv = format_cnot_csv(reps);
  EXPECT_EQ(csv.rfind("x,x_prime,quantity,value\n", 0), 0U);
  EXPECT_NE(csv.find("1,1.01,dOmega,"), std::string::npos);
}
