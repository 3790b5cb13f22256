#pragma once

// Operational bounds derived from the negativity: singlet distance,
// teleportation distance and fidelities, and distillation.

#include <algorithm>
#include <cmath>

#include "neglab/measures.hpp"
#include "neglab/states.hpp"

namespace neglab {

/// Lower bound on the trace distance to P+ reachable by LOCC: max(0, 2(1 - (1+2N)/m)).
inline double singlet_distance_bound(double negativity, int m) {
  return std::max(0.0, 2.0 * (1.0 - (1.0 + 2.0 * negativity) / m));
}

inline double singlet_distance_bound(const DensityMatrix& rho) {
  const int m = detail::equal_local_dim(rho, "singlet_distance_bound");
  return singlet_distance_bound(negativity(rho), m);
}

namespace detail {
inline void require_mixing_weight(double p, int m) {
  require<DomainError>(p >= 0.0 && p <= 1.0, "noisy singlet: p must lie in [0,1]");
  require<DomainError>(m >= 2, "noisy singlet: m must be at least 2");
}
}  // namespace detail

/// ||P+ - rho_p||_1 = 2(1-p)(m^2-1)/m^2.
inline double noisy_singlet_distance(double p, int m) {
  detail::require_mixing_weight(p, m);
  const double mm = static_cast<double>(m) * m;
  return 2.0 * (1.0 - p) * (mm - 1.0) / mm;
}

/// ||rho_p^{T_A}||_1 = m p + (1-p)/m. Only valid while rho_p^{T_A} has a negative
/// part; see noisy_singlet_closed_form_threshold.
inline double noisy_singlet_pt_norm(double p, int m) {
  detail::require_mixing_weight(p, m);
  return m * p + (1.0 - p) / m;
}

/// Smallest p at which the numerically computed ||rho_p^{T_A}||_1 starts to exceed 1,
/// found by bisection on the constructed state. Above it the closed form holds.
inline double noisy_singlet_closed_form_threshold(int m, double tol = 1e-12) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (negativity(noisy_singlet(mid, m)) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

/// Average trace distance of the depolarizing channel p id + (1-p) I/m: 2(1-p)(m-1)/m.
inline double depolarizing_teleport_distance(double p, int m) {
  detail::require_mixing_weight(p, m);
  return 2.0 * (1.0 - p) * (m - 1.0) / m;
}

struct BoundsReport {
  int m = 2;
  double negativity = 0.0;
  double singlet_distance_lb = 0.0;
  double teleport_distance_lb = 0.0;
  double singlet_fidelity_ub = 1.0;
  double channel_fidelity_ub = 1.0;
  double distillation_ub_bits = 0.0;
  // Unclamped values.
  double raw_singlet_distance_lb = 0.0;
  double raw_teleport_distance_lb = 0.0;
  double raw_singlet_fidelity_ub = 0.0;
  double raw_channel_fidelity_ub = 0.0;
};

/// All single-copy bounds for a given negativity on m x m.
///   teleport distance >= 2(m - 1 - 2N)/(m + 1) = m/(m+1) * singlet distance bound
///   F_opt <= (1 + 2N)/m,  f_opt <= (m F_opt + 1)/(m + 1) = 2(N + 1)/(m + 1)
inline BoundsReport teleportation_bounds(double negativity, int m) {
  detail::require<DomainError>(m >= 2, "teleportation_bounds: m must be at least 2");
  detail::require<DomainError>(negativity >= 0.0, "teleportation_bounds: negativity must be nonnegative");
  BoundsReport r;
  r.m = m;
  r.negativity = negativity;
  r.raw_singlet_distance_lb = 2.0 * (1.0 - (1.0 + 2.0 * negativity) / m);
  r.raw_teleport_distance_lb = 2.0 * (m - 1.0 - 2.0 * negativity) / (m + 1.0);
  r.raw_singlet_fidelity_ub = (1.0 + 2.0 * negativity) / m;
  r.raw_channel_fidelity_ub = 2.0 * (negativity + 1.0) / (m + 1.0);
  r.singlet_distance_lb = std::clamp(r.raw_singlet_distance_lb, 0.0, 2.0);
  r.teleport_distance_lb = std::clamp(r.raw_teleport_distance_lb, 0.0, 2.0);
  r.singlet_fidelity_ub = std::clamp(r.raw_singlet_fidelity_ub, 0.0, 1.0);
  r.channel_fidelity_ub = std::clamp(r.raw_channel_fidelity_ub, 0.0, 1.0);
  r.distillation_ub_bits = std::log2(1.0 + 2.0 * negativity);
  return r;
}

inline BoundsReport teleportation_bounds(const DensityMatrix& rho) {
  const int m = detail::equal_local_dim(rho, "teleportation_bounds");
  return teleportation_bounds(negativity(rho), m);
}

/// Slack E_N(rho) - [log2 d + log2(1 - delta)] of the one-shot distillation bound;
/// negative slack means no LOCC protocol reaches a d-dimensional maximally entangled
/// state with error delta from rho.
inline double one_shot_distill_bound(const DensityMatrix& rho, int target_dim, double delta) {
  detail::require<DomainError>(delta >= 0.0 && delta < 1.0, "one_shot_distill_bound: error must lie in [0,1)");
  detail::require<DomainError>(target_dim >= 1, "one_shot_distill_bound: target dimension must be positive");
  return log_negativity(rho) - (std::log2(static_cast<double>(target_dim)) + std::log2(1.0 - delta));
}

/// E_N(rho), an upper bound on the distillable entanglement for any error 0 <= eps < 1.
inline double distillation_rate_bound(const DensityMatrix& rho) { return log_negativity(rho); }

}  // namespace neglab
