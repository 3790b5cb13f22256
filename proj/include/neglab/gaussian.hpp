#pragma once

// Gaussian states at the covariance-matrix level.
//
// Ordering is xpxp: mode k owns rows 2k (position) and 2k+1 (momentum). The
// symplectic form is block diagonal with blocks [[0, 1], [-1, 0]], and the vacuum
// has covariance I/2. Alice owns the first nA modes.

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/random.hpp"

namespace neglab {

inline RealMatrix symplectic_form(int modes) {
  detail::require<DomainError>(modes >= 1, "symplectic_form: at least one mode");
  RealMatrix s = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    s(2 * k, 2 * k + 1) = 1.0;
    s(2 * k + 1, 2 * k) = -1.0;
  }
  return s;
}

inline constexpr double kCovSymTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-10;

/// Real symmetric 2n x 2n covariance with an Alice|Bob mode partition.
class CovarianceMatrix {
public:
  CovarianceMatrix(RealMatrix gamma, int n_a, int n_b) : gamma_(std::move(gamma)), n_a_(n_a), n_b_(n_b) {
    detail::require<ShapeError>(n_a >= 0 && n_b >= 0 && n_a + n_b >= 1, "CovarianceMatrix: invalid mode partition");
    detail::require<ShapeError>(gamma_.rows() == 2 * (n_a + n_b) && gamma_.cols() == gamma_.rows(),
                                "CovarianceMatrix: gamma must be 2n x 2n with n = nA + nB");
    const double scale = std::max(1.0, gamma_.cwiseAbs().maxCoeff());
    detail::require<InvariantError>((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() <= kCovSymTol * scale,
                                    "CovarianceMatrix: gamma is not symmetric");
    detail::require<InvariantError>(gamma_.allFinite(), "CovarianceMatrix: non-finite entry");
  }

  [[nodiscard]] const RealMatrix& gamma() const { return gamma_; }
  [[nodiscard]] int n_a() const { return n_a_; }
  [[nodiscard]] int n_b() const { return n_b_; }
  [[nodiscard]] int modes() const { return n_a_ + n_b_; }

  /// gamma + (i/2) sigma >= 0 within 1e-10.
  [[nodiscard]] bool is_physical() const {
    ComplexMatrix h = gamma_.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(modes()).cast<Complex>();
    return hermitian_eigensystem(hermitian_part(h)).eigenvalues()(0) >= -kPhysicalTol;
  }

  [[nodiscard]] bool is_positive_definite() const {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gamma_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) > 0.0;
  }

private:
  RealMatrix gamma_;
  int n_a_;
  int n_b_;
};

inline constexpr double kPairingTol = 1e-8;

/// Moduli c_k of the eigenvalues +-i c_k of sigma^{-1} gamma, nonincreasing.
inline std::vector<double> symplectic_spectrum(const CovarianceMatrix& cov) {
  detail::require<DomainError>(cov.is_positive_definite(), "symplectic_spectrum: gamma must be positive definite");
  const int n = cov.modes();
  const RealMatrix sigma = symplectic_form(n);
  const RealMatrix m = sigma.transpose() * cov.gamma();  // sigma^{-1} = sigma^T
  Eigen::EigenSolver<RealMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("symplectic_spectrum: eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();

  std::vector<double> plus, minus;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    detail::require<ConvergenceError>(std::abs(ev(k).real()) <= kPairingTol * std::max(1.0, scale),
                                      "symplectic_spectrum: eigenvalue with nonzero real part");
    (ev(k).imag() >= 0.0 ? plus : minus).push_back(std::abs(ev(k).imag()));
  }
  detail::require<ConvergenceError>(plus.size() == minus.size(), "symplectic_spectrum: eigenvalues not paired");
  std::sort(plus.begin(), plus.end(), std::greater<>());
  std::sort(minus.begin(), minus.end(), std::greater<>());
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    detail::require<ConvergenceError>(std::abs(plus[k] - minus[k]) <= kPairingTol * std::max(1.0, scale),
                                      "symplectic_spectrum: +-i pairing violated");
    out[k] = 0.5 * (plus[k] + minus[k]);
  }
  return out;
}

/// Reverses Alice's momenta: gamma -> P gamma P with P = diag(1, -1) on each of Alice's modes.
inline CovarianceMatrix gaussian_partial_transpose(const CovarianceMatrix& cov) {
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(2 * cov.modes());
  for (int k = 0; k < cov.n_a(); ++k) flip(2 * k + 1) = -1.0;
  RealMatrix g = flip.asDiagonal() * cov.gamma() * flip.asDiagonal();
  return CovarianceMatrix(std::move(g), cov.n_a(), cov.n_b());
}

/// log2 of the trace norm of the single-mode Gaussian operator with covariance diag(c, c).
inline double f_single_mode(double c) {
  detail::require<DomainError>(c > 0.0, "f_single_mode: c must be positive");
  return 2.0 * c >= 1.0 ? 0.0 : -std::log2(2.0 * c);
}

inline double gaussian_log_negativity(const CovarianceMatrix& cov) {
  detail::require<InvariantError>(cov.is_physical(), "gaussian_log_negativity: gamma violates the uncertainty relation");
  double e = 0.0;
  for (double c : symplectic_spectrum(gaussian_partial_transpose(cov))) e += f_single_mode(c);
  return e;
}

// ---------------------------------------------------------------------------
// One mode per side.

/// Local symplectic invariants of gamma = [[A, C], [C^T, B]].
struct TwoModeInvariants {
  double det_a = 0.0;
  double det_b = 0.0;
  double det_c = 0.0;
  double det_gamma = 0.0;
};

inline void require_two_mode(const CovarianceMatrix& cov, const char* what) {
  detail::require<ShapeError>(cov.n_a() == 1 && cov.n_b() == 1, std::string(what) + ": exactly one mode per side");
}

inline TwoModeInvariants two_mode_invariants(const CovarianceMatrix& cov) {
  require_two_mode(cov, "two_mode_invariants");
  const RealMatrix& g = cov.gamma();
  return {g.block<2, 2>(0, 0).determinant(), g.block<2, 2>(2, 2).determinant(), g.block<2, 2>(0, 2).determinant(),
          g.determinant()};
}

/// Symplectic spectrum of gamma^{T_A} from the invariants alone: the eigenvalues
/// xi of sigma^{-1} gamma^{T_A} solve xi^4 + (detA + detB - 2 detC) xi^2 + det gamma = 0,
/// so with xi = +-i c the squares c^2 are roots of x^2 - (detA + detB - 2 detC) x + det gamma.
/// Returns (c1, c2) nonincreasing.
inline std::array<double, 2> two_mode_pt_spectrum_via_quartic(const CovarianceMatrix& cov) {
  const TwoModeInvariants inv = two_mode_invariants(cov);
  const double delta = inv.det_a + inv.det_b - 2.0 * inv.det_c;
  const double disc = std::max(0.0, delta * delta - 4.0 * inv.det_gamma);
  const double s = std::sqrt(disc);
  const double big = 0.5 * (delta + s);
  const double small = big > 0.0 ? inv.det_gamma / big : 0.0;  // Vieta, avoids cancellation
  return {std::sqrt(big), std::sqrt(std::max(small, 0.0))};
}

/// Normal form of a pure two-mode state: diag blocks a I, off-diagonal diag(c, -c), a^2 = c^2 + 1/4.
inline CovarianceMatrix two_mode_pure_normal_form(double a) {
  detail::require<DomainError>(a >= 0.5, "two_mode_pure_normal_form: a must be at least 1/2");
  const double c = std::sqrt(a * a - 0.25);
  RealMatrix g = RealMatrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = a;
  g(0, 2) = g(2, 0) = c;
  g(1, 3) = g(3, 1) = -c;
  return CovarianceMatrix(g, 1, 1);
}

/// Two-mode squeezed vacuum with squeezing r (a = cosh(2r)/2, c = sinh(2r)/2).
inline CovarianceMatrix two_mode_squeezed(double r) {
  return two_mode_pure_normal_form(std::cosh(2.0 * r) / 2.0);
}

/// -log2(2(a - c)) = -2 log2(sqrt(a + 1/2) - sqrt(a - 1/2)).
inline double two_mode_pure_log_negativity(double a) {
  detail::require<DomainError>(a >= 0.5, "two_mode_pure_log_negativity: a must be at least 1/2");
  return -2.0 * std::log2(std::sqrt(a + 0.5) - std::sqrt(a - 0.5));
}

/// Thermal product state with symplectic eigenvalues `nu` (each >= 1/2 for a physical state).
inline CovarianceMatrix thermal_state(const std::vector<double>& nu, int n_a) {
  const int n = static_cast<int>(nu.size());
  RealMatrix g = RealMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) g(2 * k, 2 * k) = g(2 * k + 1, 2 * k + 1) = nu[k];
  return CovarianceMatrix(g, n_a, n - n_a);
}

/// exp(sigma H) for a random symmetric H with entries of size `strength`; symplectic by construction.
inline RealMatrix random_symplectic(int modes, double strength, Rng& rng) {
  RealMatrix h = gaussian_real(2 * modes, 2 * modes, rng) * strength;
  h = 0.5 * (h + h.transpose()).eval();
  const RealMatrix gen = symplectic_form(modes) * h;
  return gen.exp();
}

/// S diag(nu) S^T with symplectic eigenvalues nu_k = 1/2 + Exp(1) and a random symplectic S.
inline CovarianceMatrix random_physical_covariance(int n_a, int n_b, Rng& rng, double strength = 0.5) {
  const int n = n_a + n_b;
  std::exponential_distribution<double> ed(1.0);
  std::vector<double> nu(n);
  for (auto& v : nu) v = 0.5 + ed(rng);
  const RealMatrix s = random_symplectic(n, strength, rng);
  RealMatrix g = s * thermal_state(nu, n_a).gamma() * s.transpose();
  g = 0.5 * (g + g.transpose()).eval();
  return CovarianceMatrix(g, n_a, n_b);
}

}  // namespace neglab
