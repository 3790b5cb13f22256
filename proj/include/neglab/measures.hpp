#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/states.hpp"

namespace neglab {

/// Eigenvalues of the partial transpose in (-kNegativeCutoff, 0) count as zero.
inline constexpr double kNegativeCutoff = 1e-12;

struct MeasureReport {
  double negativity = 0.0;
  double log_negativity = 0.0;  // bits
  double trace_norm_pt = 1.0;
  std::vector<double> negative_eigvals;  // raw, nonincreasing, all < 0
};

inline MeasureReport measure(const DensityMatrix& rho, int party = 0) {
  detail::require<ShapeError>(rho.dims().parties() == 2, "negativity: bipartite state required");
  const auto ev = hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.dims(), party));
  MeasureReport r;
  double neg = 0.0, norm = 0.0;
  for (double l : ev) {
    norm += std::abs(l);
    if (l > -kNegativeCutoff) continue;
    r.negative_eigvals.push_back(l);
    neg -= l;
  }
  r.negativity = neg;
  r.trace_norm_pt = norm;
  r.log_negativity = std::log2(1.0 + 2.0 * neg);
  return r;
}

/// Absolute sum of the negative eigenvalues of rho^{T_party}.
inline double negativity(const DensityMatrix& rho, int party = 0) { return measure(rho, party).negativity; }

/// log2 ||rho^{T_A}||_1 = log2(1 + 2 N), in bits.
inline double log_negativity(const DensityMatrix& rho, int party = 0) { return measure(rho, party).log_negativity; }

/// ((sum_a c_a)^2 - 1)/2.
inline double negativity_pure(const SchmidtDecomposition& s) {
  const double sum = std::accumulate(s.coeffs.begin(), s.coeffs.end(), 0.0);
  return (sum * sum - 1.0) / 2.0;
}

inline double log_negativity_pure(const SchmidtDecomposition& s) {
  const double sum = std::accumulate(s.coeffs.begin(), s.coeffs.end(), 0.0);
  return 2.0 * std::log2(sum);
}

/// Closed-form negativity of an OO-invariant state.
inline double negativity_oo(const OOStateParams& p) {
  validate(p);
  const double gd = p.g / p.d;
  const double n = 0.25 * std::abs(1.0 - p.f) + 0.25 * std::abs(1.0 + p.f - 2.0 * gd) + 0.5 * std::abs(gd) - 0.5;
  return std::max(n, 0.0);
}

/// Closed-form separable (= PPT) base-norm negativity of an OO-invariant state,
/// i.e. the robustness of entanglement.
inline double robustness_oo(const OOStateParams& p) {
  validate(p);
  return 0.5 * std::max({std::abs(2.0 * p.f - 1.0) - 1.0, std::abs(2.0 * p.g - 1.0) - 1.0, 0.0});
}

/// -sum c_a^2 log2 c_a^2, in bits.
inline double entropy_of_entanglement(const SchmidtDecomposition& s) {
  double e = 0.0;
  for (double c : s.coeffs) {
    const double q = c * c;
    if (q > 0.0) e -= q * std::log2(q);
  }
  return e;
}

}  // namespace neglab
