#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qca/errors.hpp"
#include "qca/refdist.hpp"
#include "qca/spectral.hpp"

namespace {

using namespace qca;

TEST(Eigendecompose, Identity) {
  const auto es = eigendecompose(UnitaryMatrix::Identity(8, 8));
  for (double a : es.angles) EXPECT_NEAR(std::min(a, kTwoPi - a), 0.0, 1e-14);
  EXPECT_LE(unitarity_deviation(es.vectors), 1e-12);
}

TEST(Eigendecompose, DiagonalQuarterPhases) {
  UnitaryMatrix d = UnitaryMatrix::Zero(4, 4);
  d(0, 0) = 1.0;
  d(1, 1) = Complex(0, 1);
  d(2, 2) = -1.0;
  d(3, 3) = Complex(0, -1);
  auto es = eigendecompose(d);
  std::sort(es.angles.begin(), es.angles.end());
  EXPECT_NEAR(es.angles[0], 0.0, 1e-14);
  EXPECT_NEAR(es.angles[1], kPi / 2, 1e-14);
  EXPECT_NEAR(es.angles[2], kPi, 1e-14);
  EXPECT_NEAR(es.angles[3], 3 * kPi / 2, 1e-14);
  EXPECT_EQ(spacings(es.angles), (std::vector<double>{1.0, 1.0, 1.0, 1.0}));
}

TEST(Eigendecompose, ReconstructsHaarUnitary) {
  const UnitaryMatrix u = sample_cue(64, 11);
  const auto es = eigendecompose(u);
  Eigen::VectorXcd lambda(64);
  for (int i = 0; i < 64; ++i) lambda(i) = std::polar(1.0, es.angles[static_cast<std::size_t>(i)]);
  const UnitaryMatrix rebuilt = es.vectors * lambda.asDiagonal() * es.vectors.adjoint();
  EXPECT_LE((rebuilt - u).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE(unitarity_deviation(es.vectors), 1e-10);
}

TEST(Eigendecompose, RejectsNonUnitary) {
  UnitaryMatrix m = UnitaryMatrix::Identity(4, 4);
  m(0, 0) = 2.0;
  EXPECT_THROW(eigendecompose(m), InvalidArgument);
}

TEST(Eigendecompose, GlobalPhaseShiftsAnglesOnly) {
  const UnitaryMatrix u = sample_cue(32, 5);
  const double phase = 0.37;
  const auto a = spacings(eigendecompose(u).angles);
  const auto b = spacings(eigendecompose(u * std::polar(1.0, phase)).angles);
  // Spacings are the same multiset; the wrap point may move.
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  for (std::size_t i = 0; i < sa.size(); ++i) EXPECT_NEAR(sa[i], sb[i], 1e-9);
}

TEST(Spacings, CircularWrapAndUnfolding) {
  EXPECT_EQ(spacings(std::vector<double>{0.0, 0.0, 0.0, 0.0}), (std::vector<double>{0.0, 0.0, 0.0, 4.0}));
  const std::vector<double> angles{0.1, 2.0, 4.5, 6.0};
  const auto s = spacings(angles);
  EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 4.0, 1e-14);
  EXPECT_NEAR(s.back(), (0.1 + kTwoPi - 6.0) * 4 / kTwoPi, 1e-14);
  EXPECT_THROW(spacings(std::vector<double>{1.0}), InvalidArgument);
}

TEST(EigvecElements, BasisAndFourierExtremes) {
  const auto y_id = eigvec_elements(UnitaryMatrix::Identity(4, 4));
  EXPECT_EQ(std::count(y_id.begin(), y_id.end(), 4.0), 4);
  EXPECT_EQ(std::count(y_id.begin(), y_id.end(), 0.0), 12);

  UnitaryMatrix f(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) f(j, k) = std::polar(0.5, kTwoPi * j * k / 4.0);
  for (double y : eigvec_elements(f)) EXPECT_NEAR(y, 1.0, 1e-14);

  UnitaryMatrix bad = UnitaryMatrix::Identity(4, 4);
  bad(0, 1) = 0.5;
  EXPECT_THROW(eigvec_elements(bad), InvalidArgument);
}

TEST(AnalyzeSpectrum, MeansAreExactlyOne) {
  const auto d = analyze_spectrum(sample_cue(128, 3));
  const double ms = std::accumulate(d.spacings.begin(), d.spacings.end(), 0.0) / 128;
  const double my = std::accumulate(d.eigvec_elements.begin(), d.eigvec_elements.end(), 0.0) / (128.0 * 128.0);
  EXPECT_NEAR(ms, 1.0, 1e-12);
  EXPECT_NEAR(my, 1.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(d.eigenangles.begin(), d.eigenangles.end()));
}

TEST(FidelityDecay, UnperturbedStaysAtOne) {
  const UnitaryMatrix u = sample_cue(16, 1);
  const StateVector psi = haar_state(16, 2);
  for (double f : fidelity_decay(u, UnitaryMatrix::Identity(16, 16), psi, 20)) EXPECT_NEAR(f, 1.0, 1e-12);
}

TEST(FidelityDecay, IdentityMapUnderPhasePerturbation) {
  // U = I: F(t) = |<psi| P^t |psi>|^2, computable directly.
  const int n = 3;
  const double eps = 0.1;
  const UnitaryMatrix p = sigma_z_perturbation(n, eps);
  const StateVector psi = haar_state(8, 9);
  const auto f = fidelity_decay(UnitaryMatrix::Identity(8, 8), p, psi, 5);
  for (int t = 1; t <= 5; ++t) {
    Complex amp = 0.0;
    for (int b = 0; b < 8; ++b) {
      const int ones = __builtin_popcount(static_cast<unsigned>(b));
      amp += std::norm(psi(b)) * std::polar(1.0, t * eps * (n - 2 * ones));
    }
    EXPECT_NEAR(f[static_cast<std::size_t>(t - 1)], std::norm(amp), 1e-12);
  }
}

TEST(FidelityDecay, RejectsMismatchedInputs) {
  EXPECT_THROW(fidelity_decay(UnitaryMatrix::Identity(4, 4), UnitaryMatrix::Identity(8, 8), haar_state(4, 1), 3),
               InvalidArgument);
  EXPECT_THROW(fidelity_decay(UnitaryMatrix::Identity(4, 4), UnitaryMatrix::Identity(4, 4), haar_state(4, 1), 0),
               InvalidArgument);
}

TEST(LogLinearFit, ExactExponential) {
  std::vector<double> f;
  for (int t = 1; t <= 30; ++t) f.push_back(std::exp(-0.07 * t));
  const auto fit = fit_log_linear(f, 0.1);
  EXPECT_NEAR(fit.slope, -0.07, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.points, 31u);  // includes t = 0; exp(-0.07 * 30) = 0.12 is above the floor
}

TEST(LogLinearFit, StopsAtTheFloor) {
  std::vector<double> f;
  for (int t = 1; t <= 100; ++t) f.push_back(std::exp(-0.1 * t));
  EXPECT_EQ(fit_log_linear(f, 0.1).points, 24u);  // t = 0..23
}

}  // namespace
