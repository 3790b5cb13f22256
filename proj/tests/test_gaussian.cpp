#include <gtest/gtest.h>

#include <cmath>

#include "neglab/gaussian.hpp"

using namespace neglab;

namespace {

// Two-mode squeezed vacuum in the Fock basis: sum_n sqrt(1 - l^2) l^n |n n>, l = tanh r.
// The PT trace norm is (sum_n c_n)^2 with c_n the Schmidt coefficients.
double schmidt_series_log_negativity(double r) {
  const double l = std::tanh(r);
  double s = 0.0, term = std::sqrt(1.0 - l * l);
  for (int n = 0; n < 2000 && term > 1e-18; ++n, term *= l) s += term;
  return std::log2(s * s);
}

RealMatrix block_diag(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix g = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  g.topLeftCorner(a.rows(), a.cols()) = a;
  g.bottomRightCorner(b.rows(), b.cols()) = b;
  return g;
}

}  // namespace

TEST(SymplecticForm, Structure) {
  const RealMatrix s = symplectic_form(3);
  EXPECT_EQ(s.transpose(), RealMatrix(-s));
  EXPECT_EQ(RealMatrix(s * s), RealMatrix(-RealMatrix::Identity(6, 6)));
  EXPECT_EQ(s(0, 1), 1.0);
  EXPECT_EQ(s(1, 0), -1.0);
}

TEST(CovarianceMatrix, Validation) {
  EXPECT_THROW(CovarianceMatrix(RealMatrix::Identity(3, 3), 1, 1), ShapeError);
  RealMatrix g = RealMatrix::Identity(4, 4) / 2.0;
  g(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix(g, 1, 1), InvariantError);
  EXPECT_TRUE(CovarianceMatrix(RealMatrix::Identity(2, 2) / 2.0, 1, 0).is_physical());
  EXPECT_FALSE(CovarianceMatrix(RealMatrix::Identity(2, 2) / 4.0, 1, 0).is_physical());
}

TEST(SymplecticSpectrum, Anchors) {
  for (double c : symplectic_spectrum(CovarianceMatrix(RealMatrix::Identity(6, 6) / 2.0, 2, 1))) EXPECT_NEAR(c, 0.5, 1e-14);
  const auto th = symplectic_spectrum(thermal_state({1.7}, 1));
  ASSERT_EQ(th.size(), 1u);
  EXPECT_NEAR(th[0], 1.7, 1e-14);
  for (double c : symplectic_spectrum(two_mode_pure_normal_form(1.3))) EXPECT_NEAR(c, 0.5, 1e-12);
  EXPECT_THROW(symplectic_spectrum(CovarianceMatrix(-RealMatrix::Identity(2, 2), 1, 0)), DomainError);
}

TEST(SymplecticSpectrum, InvariantUnderSymplecticConjugation) {
  Rng rng(1);
  for (int k = 0; k < 30; ++k) {
    const int na = 1 + k % 2, nb = 1 + (k / 2) % 2;
    const CovarianceMatrix cov = random_physical_covariance(na, nb, rng);
    const RealMatrix s = random_symplectic(na + nb, 0.4, rng);
    EXPECT_LE((s * symplectic_form(na + nb) * s.transpose() - symplectic_form(na + nb)).cwiseAbs().maxCoeff(), 1e-10);
    RealMatrix g = s * cov.gamma() * s.transpose();
    g = 0.5 * (g + g.transpose()).eval();
    const auto a = symplectic_spectrum(cov);
    const auto b = symplectic_spectrum(CovarianceMatrix(g, na, nb));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
  }
}

TEST(GaussianPartialTranspose, Anchors) {
  const CovarianceMatrix prod = thermal_state({0.7, 1.1}, 1);
  EXPECT_EQ(gaussian_partial_transpose(prod).gamma(), prod.gamma());

  const CovarianceMatrix pure = two_mode_pure_normal_form(1.25);
  const RealMatrix pt = gaussian_partial_transpose(pure).gamma();
  EXPECT_NEAR(pt(0, 2), pure.gamma()(0, 2), 1e-15);
  EXPECT_NEAR(pt(1, 3), -pure.gamma()(1, 3), 1e-15);  // diag(c, -c) -> diag(c, c)
  EXPECT_GT(pt(1, 3), 0.0);

  Rng rng(2);
  const CovarianceMatrix r = random_physical_covariance(2, 1, rng);
  EXPECT_EQ(gaussian_partial_transpose(gaussian_partial_transpose(r)).gamma(), r.gamma());
}

TEST(FSingleMode, Values) {
  EXPECT_EQ(f_single_mode(0.5), 0.0);
  EXPECT_NEAR(f_single_mode(0.25), 1.0, 1e-15);
  EXPECT_EQ(f_single_mode(1.0), 0.0);
  EXPECT_NEAR(f_single_mode(0.5 - 1e-12), 0.0, 1e-11);  // continuous at 1/2
  EXPECT_THROW(f_single_mode(0.0), DomainError);
}

TEST(FSingleMode, MatchesOperatorDerivation) {
  // Gaussian operator with parameter z: trace norm ratio (1 - z)/(1 - |z|), z = 1 - 1/(c + 1/2).
  for (int i = 1; i < 100; ++i) {
    const double c = i / 200.0;
    const double z = 1.0 - 1.0 / (c + 0.5);
    EXPECT_LT(z, 0.0);
    const double ratio = (1.0 - z) / (1.0 - std::abs(z));
    EXPECT_NEAR(ratio, 1.0 / (2.0 * c), 1e-10 / c);
    EXPECT_NEAR(f_single_mode(c), std::log2(ratio), 1e-12);
  }
}

TEST(GaussianLogNegativity, TwoModeSqueezed) {
  for (double r : {0.2, 0.5, std::atanh(0.6), 1.0}) {
    const double oracle = std::log2((1.0 + std::tanh(r)) / (1.0 - std::tanh(r)));
    EXPECT_NEAR(schmidt_series_log_negativity(r), oracle, 1e-9);
    EXPECT_NEAR(gaussian_log_negativity(two_mode_squeezed(r)), oracle, 1e-9);
  }
  EXPECT_NEAR(gaussian_log_negativity(two_mode_squeezed(std::atanh(0.6))), 2.0, 1e-9);
}

TEST(GaussianLogNegativity, ProductAndVacuum) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const CovarianceMatrix a = random_physical_covariance(1, 0, rng);
    const CovarianceMatrix b = random_physical_covariance(0, 2, rng);
    EXPECT_EQ(gaussian_log_negativity(CovarianceMatrix(block_diag(a.gamma(), b.gamma()), 1, 2)), 0.0);
  }
  EXPECT_EQ(gaussian_log_negativity(two_mode_pure_normal_form(0.5)), 0.0);
  EXPECT_THROW(gaussian_log_negativity(CovarianceMatrix(RealMatrix::Identity(4, 4) / 4.0, 1, 1)), InvariantError);
}

TEST(GaussianLogNegativity, ZeroWhenPartialTransposeIsPhysical) {
  Rng rng(4);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const CovarianceMatrix cov = random_physical_covariance(1, 1, rng);
    if (!gaussian_partial_transpose(cov).is_physical()) continue;
    EXPECT_EQ(gaussian_log_negativity(cov), 0.0);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Quartic, MatchesEigenRoute) {
  Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    const CovarianceMatrix cov = random_physical_covariance(1, 1, rng);
    const auto q = two_mode_pt_spectrum_via_quartic(cov);
    const auto e = symplectic_spectrum(gaussian_partial_transpose(cov));
    EXPECT_NEAR(q[0], e[0], 1e-9);
    EXPECT_NEAR(q[1], e[1], 1e-9);
  }
}

TEST(Quartic, InvariantsAndAnchors) {
  const double a = 1.1, c = std::sqrt(a * a - 0.25);
  const CovarianceMatrix pure = two_mode_pure_normal_form(a);
  const TwoModeInvariants inv = two_mode_invariants(pure);
  EXPECT_NEAR(inv.det_a, a * a, 1e-14);
  EXPECT_NEAR(inv.det_c, -c * c, 1e-14);
  EXPECT_NEAR(inv.det_gamma, 1.0 / 16.0, 1e-12);
  // under PT only det C flips sign
  const TwoModeInvariants pt = two_mode_invariants(gaussian_partial_transpose(pure));
  EXPECT_NEAR(pt.det_a, inv.det_a, 1e-15);
  EXPECT_NEAR(pt.det_b, inv.det_b, 1e-15);
  EXPECT_NEAR(pt.det_c, -inv.det_c, 1e-15);
  EXPECT_NEAR(pt.det_gamma, inv.det_gamma, 1e-12);

  const auto q = two_mode_pt_spectrum_via_quartic(pure);
  EXPECT_NEAR(q[0], a + c, 1e-12);
  EXPECT_NEAR(q[1], a - c, 1e-12);
  EXPECT_NEAR(q[0] * q[1], 0.25, 1e-12);

  const auto v = two_mode_pt_spectrum_via_quartic(CovarianceMatrix(RealMatrix::Identity(4, 4) / 2.0, 1, 1));
  EXPECT_NEAR(v[0], 0.5, 1e-14);
  EXPECT_NEAR(v[1], 0.5, 1e-14);
  EXPECT_THROW(two_mode_invariants(thermal_state({1.0, 1.0, 1.0}, 1)), ShapeError);
}

TEST(TwoModePure, Formula) {
  EXPECT_EQ(two_mode_pure_log_negativity(0.5), 0.0);
  EXPECT_NEAR(two_mode_pure_log_negativity(0.625), 1.0, 1e-14);
  EXPECT_NEAR(two_mode_pure_log_negativity(std::cosh(2.0 * std::atanh(0.6)) / 2.0), 2.0, 1e-12);
  for (double a : {0.5, 0.6, 1.0, 2.5, 10.0}) {
    const double c = std::sqrt(a * a - 0.25);
    EXPECT_NEAR(two_mode_pure_log_negativity(a), -std::log2(2.0 * (a - c)), 1e-10);
    EXPECT_NEAR(two_mode_pure_log_negativity(a), gaussian_log_negativity(two_mode_pure_normal_form(a)), 1e-10);
  }
  EXPECT_THROW(two_mode_pure_log_negativity(0.4), DomainError);
}
