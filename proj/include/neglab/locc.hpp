#pragma once

// Local measurements and protocol trees used to exercise LOCC monotonicity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/measures.hpp"
#include "neglab/random.hpp"
#include "neglab/states.hpp"

namespace neglab {

enum class Side { A = 0, B = 1 };

inline constexpr double kKrausTol = 1e-10;
inline constexpr double kOutcomeCutoff = 1e-14;

/// Local operators {M_i} acting on one side with sum_i M_i^dagger M_i <= I.
class KrausFamily {
public:
  KrausFamily(Side side, std::vector<ComplexMatrix> ops) : side_(side), ops_(std::move(ops)) {
    detail::require<ShapeError>(!ops_.empty(), "KrausFamily: at least one operator required");
    const auto in_dim = ops_.front().cols();
    for (const auto& m : ops_)
      detail::require<ShapeError>(m.cols() == in_dim && m.rows() > 0,
                                  "KrausFamily: operators must share the input dimension");
    ComplexMatrix s = ComplexMatrix::Zero(in_dim, in_dim);
    for (const auto& m : ops_) s += m.adjoint() * m;
    const double top = hermitian_eigensystem(hermitian_part(s)).eigenvalues().maxCoeff();
    detail::require<InvariantError>(top <= 1.0 + kKrausTol, "KrausFamily: sum of M^dagger M exceeds the identity");
  }

  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] const std::vector<ComplexMatrix>& operators() const { return ops_; }
  [[nodiscard]] int input_dim() const { return static_cast<int>(ops_.front().cols()); }
  [[nodiscard]] std::size_t size() const { return ops_.size(); }

private:
  Side side_;
  std::vector<ComplexMatrix> ops_;
};

struct MeasurementOutcome {
  double probability = 0.0;
  DensityMatrix state;
};

namespace detail {

inline void require_side_dim(const DimsProfile& dims, const KrausFamily& k, const char* what) {
  require<ShapeError>(dims.parties() == 2, std::string(what) + ": bipartite state required");
  require<ShapeError>(dims[static_cast<int>(k.side())] == k.input_dim(),
                      std::string(what) + ": operator shape does not match the local dimension");
}

/// Lifts a local operator to the composite system.
inline ComplexMatrix lift(const ComplexMatrix& m, Side side, const DimsProfile& dims) {
  if (side == Side::A) return tensor_product(m, ComplexMatrix::Identity(dims[1], dims[1]));
  return tensor_product(ComplexMatrix::Identity(dims[0], dims[0]), m);
}

inline DimsProfile output_dims(const ComplexMatrix& m, Side side, const DimsProfile& dims) {
  const int out = static_cast<int>(m.rows());
  return side == Side::A ? DimsProfile{out, dims[1]} : DimsProfile{dims[0], out};
}

}  // namespace detail

/// Unnormalized branch (I (x) M) X (I (x) M^dagger), or the Alice-side analogue.
inline ComplexMatrix apply_kraus(const ComplexMatrix& x, const DimsProfile& dims, const ComplexMatrix& m, Side side) {
  const ComplexMatrix lifted = detail::lift(m, side, dims);
  return lifted * x * lifted.adjoint();
}

/// Outcomes with probability below 1e-14 are dropped.
inline std::vector<MeasurementOutcome> apply_measurement(const DensityMatrix& rho, const KrausFamily& k) {
  detail::require_side_dim(rho.dims(), k, "apply_measurement");
  std::vector<MeasurementOutcome> out;
  double total = 0.0;
  for (const auto& m : k.operators()) {
    const ComplexMatrix branch = apply_kraus(rho.matrix(), rho.dims(), m, k.side());
    const double p = branch.trace().real();
    total += p;
    if (p < kOutcomeCutoff) continue;
    out.push_back({p, DensityMatrix::from_computed(branch / p, detail::output_dims(m, k.side(), rho.dims()))});
  }
  detail::require<InvariantError>(total <= 1.0 + kKrausTol, "apply_measurement: outcome probabilities exceed 1");
  return out;
}

/// max_i || M_i(rho)^{T_A} - M~_i(rho^{T_A}) ||_1, where M~_i = M_i for Bob's
/// operators and the complex conjugate of M_i for Alice's.
inline double pt_commutation_residual(const DensityMatrix& rho, const KrausFamily& k) {
  detail::require_side_dim(rho.dims(), k, "pt_commutation_residual");
  const ComplexMatrix rho_pt = partial_transpose(rho.matrix(), rho.dims(), 0);
  double worst = 0.0;
  for (const auto& m : k.operators()) {
    const DimsProfile out_dims = detail::output_dims(m, k.side(), rho.dims());
    const ComplexMatrix lhs = partial_transpose(apply_kraus(rho.matrix(), rho.dims(), m, k.side()), out_dims, 0);
    const ComplexMatrix m_eff = k.side() == Side::A ? ComplexMatrix(m.conjugate()) : m;
    const ComplexMatrix rhs = apply_kraus(rho_pt, rho.dims(), m_eff, k.side());
    worst = std::max(worst, trace_norm(hermitian_part(lhs - rhs)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Protocol trees.

/// One local measurement; outcome i continues with children[i] (if present).
/// Classical communication is implicit: the choice of child depends on the outcome.
struct ProtocolNode {
  KrausFamily family;
  std::vector<ProtocolNode> children;
};

struct TrialResult {
  double before = 0.0;
  double after = 0.0;
  /// Upper bound on the negativity carried by pruned outcomes: sum p_i (d-1)/2.
  double pruned_bound = 0.0;

  [[nodiscard]] double slack() const { return before - after; }
};

inline constexpr int kMaxProtocolDepth = 3;
inline constexpr std::size_t kMaxProtocolOutcomes = 4;

namespace detail {

inline void run_node(const DensityMatrix& rho, double weight, const ProtocolNode* node, int depth, TrialResult& acc) {
  if (node == nullptr) {
    acc.after += weight * negativity(rho);
    return;
  }
  require<DomainError>(depth < kMaxProtocolDepth, "protocol tree deeper than 3 rounds");
  require<DomainError>(node->family.size() <= kMaxProtocolOutcomes, "protocol node with more than 4 outcomes");
  const auto& ops = node->family.operators();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const ComplexMatrix branch = apply_kraus(rho.matrix(), rho.dims(), ops[i], node->family.side());
    const double p = branch.trace().real();
    const DimsProfile out_dims = output_dims(ops[i], node->family.side(), rho.dims());
    if (p < kOutcomeCutoff) {
      acc.pruned_bound += weight * std::max(p, 0.0) * (std::min(out_dims[0], out_dims[1]) - 1) / 2.0;
      continue;
    }
    const DensityMatrix next = DensityMatrix::from_computed(branch / p, out_dims);
    const ProtocolNode* child = i < node->children.size() ? &node->children[i] : nullptr;
    run_node(next, weight * p, child, depth + 1, acc);
  }
}

}  // namespace detail

/// before = N(rho); after = sum over leaves of p_leaf N(rho_leaf).
inline TrialResult monotonicity_trial(const DensityMatrix& rho, const ProtocolNode& protocol) {
  detail::require<ShapeError>(rho.dims().parties() == 2, "monotonicity_trial: bipartite state required");
  TrialResult r;
  r.before = negativity(rho);
  detail::run_node(rho, 1.0, &protocol, 0, r);
  return r;
}

/// Non-adaptive protocol: every round's family is applied to every branch.
inline TrialResult monotonicity_trial(const DensityMatrix& rho, const std::vector<KrausFamily>& rounds) {
  if (rounds.empty()) {
    const double n = negativity(rho);
    return {n, n, 0.0};
  }
  detail::require<DomainError>(static_cast<int>(rounds.size()) <= kMaxProtocolDepth, "protocol longer than 3 rounds");
  ProtocolNode root{rounds.back(), {}};
  for (std::size_t r = rounds.size() - 1; r-- > 0;) {
    ProtocolNode parent{rounds[r], {}};
    parent.children.assign(rounds[r].size(), root);
    root = std::move(parent);
  }
  return monotonicity_trial(rho, root);
}

/// Complete family of `outcomes` operators sliced from a Haar isometry C^d -> C^{d*outcomes}.
inline KrausFamily random_kraus_family(Side side, int local_dim, int outcomes, Rng& rng) {
  detail::require<DomainError>(outcomes >= 1, "random_kraus_family: at least one outcome");
  const ComplexMatrix v = haar_isometry(local_dim * outcomes, local_dim, rng);
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < outcomes; ++i) ops.emplace_back(v.middleRows(i * local_dim, local_dim));
  return KrausFamily(side, std::move(ops));
}

/// Random adaptive protocol tree with the given number of rounds (1..3):
/// each node picks a side, an outcome count in 1..4 and a fresh Haar family.
inline ProtocolNode random_protocol(const DimsProfile& dims, int rounds, Rng& rng) {
  detail::require<DomainError>(rounds >= 1 && rounds <= kMaxProtocolDepth, "random_protocol: rounds must be 1..3");
  std::uniform_int_distribution<int> side_pick(0, 1);
  std::uniform_int_distribution<int> outcome_pick(1, static_cast<int>(kMaxProtocolOutcomes));
  const Side side = side_pick(rng) == 0 ? Side::A : Side::B;
  const int k = outcome_pick(rng);
  ProtocolNode node{random_kraus_family(side, dims[static_cast<int>(side)], k, rng), {}};
  if (rounds > 1)
    for (int i = 0; i < k; ++i) node.children.push_back(random_protocol(dims, rounds - 1, rng));
  return node;
}

/// Alice applies one of `samples` Haar unitaries U_k at random, Bob answers with conj(U_k):
/// a sampled version of the isotropic twirl, realised by LOCC.
inline ProtocolNode twirl_protocol(int m, int samples, Rng& rng) {
  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolNode> replies;
  for (int k = 0; k < samples; ++k) {
    const ComplexMatrix u = haar_unitary(m, rng);
    alice.emplace_back(u / std::sqrt(static_cast<double>(samples)));
    replies.push_back(ProtocolNode{KrausFamily(Side::B, {ComplexMatrix(u.conjugate())}), {}});
  }
  return ProtocolNode{KrausFamily(Side::A, std::move(alice)), std::move(replies)};
}

struct SweepReport {
  int trials = 0;
  int violations = 0;
  double max_slack = 0.0;  // max over trials of (after - before); <= 0 when monotone
};

inline constexpr double kMonotoneTol = 1e-9;

/// Random states on 2x2 and 2x3 with random one- and two-round protocols.
inline SweepReport monotonicity_sweep(int trials, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, 1);
  std::uniform_int_distribution<int> rank_pick(1, 4);
  SweepReport rep;
  rep.max_slack = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const DimsProfile dims = pick(rng) == 0 ? DimsProfile{2, 2} : DimsProfile{2, 3};
    const DensityMatrix rho = random_density(dims, rank_pick(rng), rng);
    const ProtocolNode proto = random_protocol(dims, 1 + pick(rng), rng);
    const TrialResult r = monotonicity_trial(rho, proto);
    const double excess = r.after - r.before;
    ++rep.trials;
    if (excess > kMonotoneTol + r.pruned_bound) ++rep.violations;
    rep.max_slack = std::max(rep.max_slack, excess);
  }
  if (trials == 0) rep.max_slack = 0.0;
  return rep;
}

/// Controlled-NOT on two qubits; a global (non-local) operation.
inline ComplexMatrix cnot() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

/// Applies a global unitary and returns (N before, N after).
inline std::pair<double, double> global_unitary_trial(const DensityMatrix& rho, const ComplexMatrix& u) {
  detail::require<ShapeError>(u.rows() == rho.dim() && u.cols() == rho.dim(), "global_unitary_trial: shape mismatch");
  const DensityMatrix out = DensityMatrix::from_computed(u * rho.matrix() * u.adjoint(), rho.dims());
  return {negativity(rho), negativity(out)};
}

}  // namespace neglab
