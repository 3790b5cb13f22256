#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/random.hpp"

namespace neglab {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix on a composite system.
/// Immutable once constructed; the constructor rejects anything that is not a state.
class DensityMatrix {
public:
  DensityMatrix(ComplexMatrix matrix, DimsProfile dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    detail::require_dims(matrix_, dims_, "DensityMatrix");
    require_hermitian(matrix_, "DensityMatrix");
    const Complex tr = matrix_.trace();
    detail::require<InvariantError>(std::abs(tr - 1.0) <= kTraceTol,
                                    "DensityMatrix: trace differs from 1 by more than 1e-10");
    const auto ev = hermitian_eigenvalues(matrix_);
    detail::require<InvariantError>(ev.back() >= -kPsdTol,
                                    "DensityMatrix: not positive semidefinite (eigenvalue below -1e-10)");
  }

  /// For matrices produced by this library: removes round-off anti-hermitian parts
  /// before validation. User input goes through the checking constructor.
  static DensityMatrix from_computed(const ComplexMatrix& m, DimsProfile dims) {
    return DensityMatrix(hermitian_part(m), std::move(dims));
  }

  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] const DimsProfile& dims() const { return dims_; }
  [[nodiscard]] int dim() const { return static_cast<int>(matrix_.rows()); }

private:
  ComplexMatrix matrix_;
  DimsProfile dims_;
};

inline DensityMatrix pure_state(const ComplexVector& psi, const DimsProfile& dims) {
  detail::require<ShapeError>(psi.size() == dims.total(), "pure_state: vector length does not match dims");
  const double n = psi.norm();
  detail::require<InvariantError>(std::abs(n - 1.0) <= 1e-8, "pure_state: vector is not normalized");
  ComplexVector v = psi / n;
  return DensityMatrix::from_computed(v * v.adjoint(), dims);
}

inline ComplexVector maximally_entangled_vector(int m) {
  detail::require<DomainError>(m >= 2, "maximally_entangled: dimension must be at least 2");
  ComplexVector v = ComplexVector::Zero(m * m);
  for (int a = 0; a < m; ++a) v(a * m + a) = 1.0 / std::sqrt(static_cast<double>(m));
  return v;
}

/// |Phi+><Phi+| with |Phi+> = m^{-1/2} sum_a |a a>.
inline DensityMatrix maximally_entangled(int m) {
  return pure_state(maximally_entangled_vector(m), DimsProfile{m, m});
}

/// p P+ + (1-p) I/m^2.
inline DensityMatrix noisy_singlet(double p, int m) {
  detail::require<DomainError>(p >= 0.0 && p <= 1.0, "noisy_singlet: p must lie in [0,1]");
  const ComplexVector phi = maximally_entangled_vector(m);
  const int dd = m * m;
  ComplexMatrix r = p * (phi * phi.adjoint()) + ComplexMatrix::Identity(dd, dd) * ((1.0 - p) / dd);
  return DensityMatrix::from_computed(r, DimsProfile{m, m});
}

/// Flip (swap) operator F|a b> = |b a> on d x d.
inline ComplexMatrix swap_operator(int d) {
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) f(b * d + a, a * d + b) = 1.0;
  return f;
}

// ---------------------------------------------------------------------------
// States invariant under U (x) U with U real orthogonal.

/// f = d tr(rho P+), g = tr(rho F) for an OO-invariant state on d x d.
struct OOStateParams {
  int d = 2;
  double f = 0.0;
  double g = 0.0;
};

inline constexpr double kTriangleTol = 1e-12;

inline void validate(const OOStateParams& p) {
  detail::require<DomainError>(p.d >= 2, "OOStateParams: d must be at least 2");
  const double t = kTriangleTol;
  const bool ok = p.f >= -t && p.f <= p.d + t && p.g >= -1.0 - t && p.g <= 1.0 + t &&
                  p.f <= p.d * (1.0 + p.g) / 2.0 + t;
  detail::require<DomainError>(ok, "OOStateParams: (f, g) outside the state triangle 0<=f<=d, -1<=g<=1, f<=d(1+g)/2");
}

/// Spectral projections p0 = P+, p1 = (I - F)/2, p2 = (I + F)/2 - P+.
inline std::array<ComplexMatrix, 3> oo_projections(int d) {
  const ComplexVector phi = maximally_entangled_vector(d);
  const ComplexMatrix pplus = phi * phi.adjoint();
  const ComplexMatrix f = swap_operator(d);
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
  return {pplus, (id - f) / 2.0, (id + f) / 2.0 - pplus};
}

/// Weights w_k = tr(rho p_k) fixed by the moments: w0 = f/d, w1 = (1-g)/2, w2 = 1 - w0 - w1.
inline std::array<double, 3> oo_weights(const OOStateParams& p) {
  const double w0 = p.f / p.d;
  const double w1 = (1.0 - p.g) / 2.0;
  return {w0, w1, 1.0 - w0 - w1};
}

inline DensityMatrix oo_state(const OOStateParams& params) {
  validate(params);
  const int d = params.d;
  const auto proj = oo_projections(d);
  const auto w = oo_weights(params);
  const std::array<double, 3> rank = {1.0, d * (d - 1) / 2.0, d * (d + 1) / 2.0 - 1.0};
  ComplexMatrix r = ComplexMatrix::Zero(d * d, d * d);
  for (int k = 0; k < 3; ++k) r += (std::max(w[k], 0.0) / rank[k]) * proj[k];
  return DensityMatrix::from_computed(r / r.trace().real(), DimsProfile{d, d});
}

namespace detail {
inline int equal_local_dim(const DensityMatrix& rho, const char* what) {
  require<ShapeError>(rho.dims().parties() == 2 && rho.dims()[0] == rho.dims()[1],
                      std::string(what) + ": requires two parties with equal local dimension");
  return rho.dims()[0];
}
}  // namespace detail

/// Moments (f, g) of an arbitrary state on d x d.
inline OOStateParams oo_moments(const DensityMatrix& rho) {
  const int d = detail::equal_local_dim(rho, "oo_moments");
  const ComplexVector phi = maximally_entangled_vector(d);
  const double fid = (phi.adjoint() * rho.matrix() * phi)(0, 0).real();
  const double g = (rho.matrix() * swap_operator(d)).trace().real();
  return {d, d * fid, g};
}

/// tr(rho P+).
inline double singlet_fidelity(const DensityMatrix& rho) {
  const int m = detail::equal_local_dim(rho, "singlet_fidelity");
  const ComplexVector phi = maximally_entangled_vector(m);
  return (phi.adjoint() * rho.matrix() * phi)(0, 0).real();
}

/// Isotropic (U (x) U*) twirl: the noisy singlet with the same overlap with P+.
/// The mixing weight p = (m^2 F - 1)/(m^2 - 1) can be negative (down to -1/(m^2-1)).
inline DensityMatrix twirl_isotropic(const DensityMatrix& rho) {
  const int m = detail::equal_local_dim(rho, "twirl_isotropic");
  const double mm = static_cast<double>(m) * m;
  const double p = (mm * singlet_fidelity(rho) - 1.0) / (mm - 1.0);
  const ComplexVector phi = maximally_entangled_vector(m);
  ComplexMatrix r = p * (phi * phi.adjoint()) + ComplexMatrix::Identity(m * m, m * m) * ((1.0 - p) / mm);
  return DensityMatrix::from_computed(r, rho.dims());
}

/// Orthogonal (U (x) U, U real) twirl: sum_k tr(rho p_k)/tr(p_k) p_k.
inline DensityMatrix twirl_oo(const DensityMatrix& rho) {
  const int d = detail::equal_local_dim(rho, "twirl_oo");
  const auto proj = oo_projections(d);
  ComplexMatrix r = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& p : proj) {
    const double tr_p = p.trace().real();
    r += ((rho.matrix() * p).trace().real() / tr_p) * p;
  }
  return DensityMatrix::from_computed(r, rho.dims());
}

// ---------------------------------------------------------------------------
// Schmidt decomposition.

/// psi = sum_a coeffs[a] basis_a.col(a) (x) basis_b.col(a), coefficients positive and nonincreasing.
struct SchmidtDecomposition {
  std::vector<double> coeffs;
  ComplexMatrix basis_a;
  ComplexMatrix basis_b;

  [[nodiscard]] ComplexVector reconstruct() const {
    ComplexVector v = ComplexVector::Zero(basis_a.rows() * basis_b.rows());
    for (std::size_t a = 0; a < coeffs.size(); ++a)
      v += coeffs[a] * tensor_product(ComplexVector(basis_a.col(a)), ComplexVector(basis_b.col(a)));
    return v;
  }
};

inline constexpr double kSchmidtCutoff = 1e-14;

inline SchmidtDecomposition schmidt(const ComplexVector& psi, const DimsProfile& dims) {
  detail::require<ShapeError>(dims.parties() == 2, "schmidt: exactly two parties required");
  detail::require<ShapeError>(psi.size() == dims.total(), "schmidt: vector length does not match dims");
  detail::require<InvariantError>(std::abs(psi.norm() - 1.0) <= 1e-8, "schmidt: vector is not normalized");
  const int da = dims[0], db = dims[1];
  ComplexMatrix c(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) c(i, j) = psi(i * db + j);
  Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();  // already nonincreasing
  int r = 0;
  while (r < s.size() && s(r) > kSchmidtCutoff) ++r;
  SchmidtDecomposition out;
  out.coeffs.assign(s.data(), s.data() + r);
  out.basis_a = svd.matrixU().leftCols(r);
  out.basis_b = svd.matrixV().leftCols(r).conjugate();
  return out;
}

// ---------------------------------------------------------------------------
// Random ensembles.

inline ComplexVector random_pure_vector(const DimsProfile& dims, Rng& rng) {
  return random_unit_vector(dims.total(), rng);
}

inline DensityMatrix random_pure(const DimsProfile& dims, Rng& rng) {
  return pure_state(random_pure_vector(dims, rng), dims);
}

/// G G^dagger / tr(G G^dagger) with G a dim x rank Ginibre matrix.
inline DensityMatrix random_density(const DimsProfile& dims, int rank, Rng& rng) {
  detail::require<DomainError>(rank >= 1, "random_density: rank must be at least 1");
  ComplexMatrix g = ginibre(dims.total(), rank, rng);
  ComplexMatrix r = g * g.adjoint();
  return DensityMatrix::from_computed(r / r.trace().real(), dims);
}

/// Convex mixture of `terms` product pure states with random weights.
inline DensityMatrix random_separable(const DimsProfile& dims, int terms, Rng& rng) {
  detail::require<DomainError>(terms >= 1, "random_separable: terms must be at least 1");
  std::exponential_distribution<double> ed(1.0);
  const int total = dims.total();
  ComplexMatrix r = ComplexMatrix::Zero(total, total);
  double wsum = 0.0;
  for (int k = 0; k < terms; ++k) {
    ComplexVector v = random_unit_vector(dims[0], rng);
    for (std::size_t p = 1; p < dims.parties(); ++p) v = tensor_product(v, random_unit_vector(dims[p], rng));
    const double w = ed(rng);
    wsum += w;
    r += w * (v * v.adjoint());
  }
  return DensityMatrix::from_computed(r / wsum, dims);
}

/// rho1 (x) rho2 for two bipartite states, regrouped as (A1 A2) | (B1 B2).
inline DensityMatrix bipartite_tensor(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  detail::require<ShapeError>(rho1.dims().parties() == 2 && rho2.dims().parties() == 2,
                              "bipartite_tensor: both states must be bipartite");
  const DimsProfile joint{rho1.dims()[0], rho1.dims()[1], rho2.dims()[0], rho2.dims()[1]};
  ComplexMatrix t = permute_subsystems(tensor_product(rho1.matrix(), rho2.matrix()), joint, {0, 2, 1, 3});
  return DensityMatrix::from_computed(
      t, DimsProfile{rho1.dims()[0] * rho2.dims()[0], rho1.dims()[1] * rho2.dims()[1]});
}

}  // namespace neglab
