#pragma once

// Base-norm ("S-negativity") programs
//
//   N_S(A) = inf { a_- : A = a_+ rho_+ - a_- rho_-,  rho_+-  in S,  a_+- >= 0 }
//
// for S = all states and S = PPT states. The value is found by bisection on the
// trace budget t = a_-: for fixed t we ask whether some N in cone(S) with tr N = t
// makes A + N an element of cone(S) as well. That inner question is a convex
// feasibility problem, decided with Dykstra's alternating projections between
// PSD cones (possibly in partially transposed coordinates) and the hyperplane
// tr N = t.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/states.hpp"

namespace neglab {

enum class Cone { AllStates, PptStates };

struct ConeSpec {
  Cone tag = Cone::AllStates;
  DimsProfile dims;

  ConeSpec(Cone t, DimsProfile d) : tag(t), dims(std::move(d)) {
    if (tag == Cone::PptStates)
      detail::require<ShapeError>(dims.parties() == 2, "ConeSpec: PPT cone requires exactly two parties");
  }
};

enum class FeasibilityStatus { Feasible, Infeasible, Indeterminate };

inline const char* to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::Infeasible: return "infeasible";
    case FeasibilityStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

/// When feasible, A = positive - negative with both terms in cone(S) up to `residual`.
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Indeterminate;
  ComplexMatrix positive;
  ComplexMatrix negative;
  double residual = 0.0;
  int sweeps = 0;

  [[nodiscard]] bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

struct BaseNormOptions {
  int max_sweeps = 5000;
  double residual_tol = 1e-7;
  double bisection_tol = 1e-4;
  /// A residual above tolerance that improves by less than stall_rel_progress
  /// over stall_window sweeps marks the probe infeasible.
  int stall_window = 100;
  double stall_rel_progress = 1e-3;
};

inline constexpr int kBaseNormMaxDim = 36;

namespace detail {

/// One convex constraint set in N-space together with its Frobenius projection.
using Projector = std::function<ComplexMatrix(const ComplexMatrix&)>;

inline std::vector<Projector> cone_projectors(const ComplexMatrix& a, const ConeSpec& cone) {
  std::vector<Projector> sets;
  // N in PSD
  sets.emplace_back([](const ComplexMatrix& n) { return psd_projection(n); });
  // A + N in PSD
  sets.emplace_back([a](const ComplexMatrix& n) { return ComplexMatrix(psd_projection(a + n) - a); });
  if (cone.tag == Cone::PptStates) {
    const DimsProfile dims = cone.dims;
    const ComplexMatrix a_pt = partial_transpose(a, dims, 0);
    sets.emplace_back([dims](const ComplexMatrix& n) {
      return partial_transpose(psd_projection(partial_transpose(n, dims, 0)), dims, 0);
    });
    sets.emplace_back([dims, a_pt](const ComplexMatrix& n) {
      return partial_transpose(ComplexMatrix(psd_projection(a_pt + partial_transpose(n, dims, 0)) - a_pt), dims, 0);
    });
  }
  return sets;
}

inline double min_eigenvalue(const ComplexMatrix& a) {
  return hermitian_eigensystem(hermitian_part(a)).eigenvalues()(0);
}

inline void check_base_norm_input(const ComplexMatrix& a, const ConeSpec& cone) {
  require_dims(a, cone.dims, "s_negativity");
  require_hermitian(a, "s_negativity");
  require<DomainError>(a.rows() <= kBaseNormMaxDim, "s_negativity: total dimension exceeds 36");
}

}  // namespace detail

/// Decides whether A + N and N can both lie in cone(S) with tr N = t.
inline FeasibilityResult feasibility(const ComplexMatrix& a, const ConeSpec& cone, double t,
                                     const BaseNormOptions& opt = {}) {
  detail::check_base_norm_input(a, cone);
  detail::require<DomainError>(t >= 0.0, "feasibility: trace budget must be nonnegative");
  const int dim = static_cast<int>(a.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

  auto sets = detail::cone_projectors(a, cone);
  auto to_hyperplane = [&](const ComplexMatrix& n) {
    return ComplexMatrix(n + ((t - n.trace().real()) / dim) * id);
  };
  sets.emplace_back(to_hyperplane);

  const std::size_t k = sets.size();
  std::vector<ComplexMatrix> incr(k, ComplexMatrix::Zero(dim, dim));
  ComplexMatrix x = (t / dim) * id;

  FeasibilityResult res;
  std::vector<double> history;
  history.reserve(opt.max_sweeps);
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    for (std::size_t j = 0; j < k; ++j) {
      ComplexMatrix y = x + incr[j];
      ComplexMatrix p = sets[j](y);
      incr[j] = y - p;
      x = hermitian_part(p);
    }
    double r = 0.0;
    for (std::size_t j = 0; j + 1 < k; ++j) r = std::max(r, (sets[j](x) - x).norm());
    res.residual = r;
    res.sweeps = sweep;
    history.push_back(r);
    if (r <= opt.residual_tol) {
      res.status = FeasibilityStatus::Feasible;
      res.negative = x;
      res.positive = a + x;
      return res;
    }
    const int w = opt.stall_window;
    if (sweep > 2 * w) {
      const double old = history[sweep - 1 - w];
      if (old - r <= opt.stall_rel_progress * old) {
        res.status = FeasibilityStatus::Infeasible;
        return res;
      }
    }
  }
  res.status = FeasibilityStatus::Indeterminate;
  return res;
}

/// Trace budget that is always feasible: N = s I with s the largest negative
/// eigenvalue magnitude among the matrices that have to become positive.
inline double s_negativity_upper(const ComplexMatrix& a, const ConeSpec& cone) {
  double s = std::max(0.0, -detail::min_eigenvalue(a));
  if (cone.tag == Cone::PptStates)
    s = std::max(s, -detail::min_eigenvalue(partial_transpose(a, cone.dims, 0)));
  return s * static_cast<double>(a.rows());
}

struct SNegativityResult {
  double value = 0.0;  // smallest probed budget with a verified decomposition
  double lower = 0.0;  // largest budget not verified feasible
  int probes = 0;
  int undecided = 0;   // probes that ran out of sweeps
  double highest_undecided = 0.0;
};

/// Bisection on the trace budget. Probes that run out of sweeps are counted as
/// not feasible, which keeps `value` an upper bound backed by a witness. Such
/// probes only occur next to the boundary; one further than 10 * bisection_tol
/// below the final value is reported as a ConvergenceError.
inline SNegativityResult s_negativity_detailed(const ComplexMatrix& a, const ConeSpec& cone,
                                               const BaseNormOptions& opt = {}) {
  detail::check_base_norm_input(a, cone);
  detail::require<DomainError>(opt.bisection_tol >= 1e-6, "s_negativity: tolerance must be at least 1e-6");

  SNegativityResult out;
  auto decide = [&](double t) {
    const FeasibilityResult r = feasibility(a, cone, t, opt);
    ++out.probes;
    if (r.status == FeasibilityStatus::Indeterminate) {
      ++out.undecided;
      out.highest_undecided = std::max(out.highest_undecided, t);
    }
    return r.feasible();
  };

  if (decide(0.0)) return out;
  double lo = 0.0;
  double hi = s_negativity_upper(a, cone);
  while (hi - lo > opt.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    (decide(mid) ? hi : lo) = mid;
  }
  out.value = hi;
  out.lower = lo;
  if (out.undecided > 0 && hi - out.highest_undecided > 10.0 * opt.bisection_tol)
    throw ConvergenceError("s_negativity: feasibility undecided at t = " + std::to_string(out.highest_undecided) +
                           ", far below the bracket end " + std::to_string(hi));
  return out;
}

/// Smallest trace budget (within opt.bisection_tol) admitting a decomposition in cone(S).
inline double s_negativity(const ComplexMatrix& a, const ConeSpec& cone, const BaseNormOptions& opt = {}) {
  return s_negativity_detailed(a, cone, opt).value;
}

inline double s_negativity(const DensityMatrix& rho, Cone tag, const BaseNormOptions& opt = {}) {
  return s_negativity(rho.matrix(), ConeSpec(tag, rho.dims()), opt);
}

}  // namespace neglab
