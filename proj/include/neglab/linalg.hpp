#pragma once

// Dense complex-matrix kernel shared by every other header.
//
// Composite index convention: for parties with local dimensions (d_0, ..., d_{n-1})
// the basis vector |i_0 i_1 ... i_{n-1}> sits at row-major position
//   ((i_0 * d_1 + i_1) * d_2 + i_2) ... ,
// i.e. party 0 is the most significant digit. For two parties this is i*d_B + j.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "neglab/error.hpp"

namespace neglab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kHermitianRelTol = 1e-12;

/// Per-party local dimensions of a composite system.
class DimsProfile {
public:
  DimsProfile() = default;
  DimsProfile(std::initializer_list<int> dims) : DimsProfile(std::vector<int>(dims)) {}
  explicit DimsProfile(std::vector<int> dims) : dims_(std::move(dims)) {
    detail::require<ShapeError>(!dims_.empty(), "dims: at least one party required");
    for (int d : dims_) detail::require<ShapeError>(d >= 1, "dims: local dimensions must be positive");
  }

  [[nodiscard]] std::size_t parties() const { return dims_.size(); }
  [[nodiscard]] int operator[](std::size_t k) const { return dims_.at(k); }
  [[nodiscard]] const std::vector<int>& values() const { return dims_; }
  [[nodiscard]] int total() const {
    return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
  }

  bool operator==(const DimsProfile&) const = default;

private:
  std::vector<int> dims_;
};

namespace detail {

inline std::vector<int> digits_of(int index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

inline int index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

inline void require_square(const ComplexMatrix& a, const char* what) {
  require<ShapeError>(a.rows() == a.cols() && a.rows() > 0, std::string(what) + ": matrix must be square and nonempty");
}

inline void require_dims(const ComplexMatrix& a, const DimsProfile& dims, const char* what) {
  require_square(a, what);
  require<ShapeError>(a.rows() == dims.total(),
                      std::string(what) + ": product of dims does not match matrix size");
}

}  // namespace detail

inline double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// True when max|A_jk - conj(A_kj)| <= rel_tol * max(1, max|A|).
inline bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianRelTol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

inline void require_hermitian(const ComplexMatrix& a, const char* what = "matrix") {
  detail::require_square(a, what);
  detail::require<InvariantError>(is_hermitian(a), std::string(what) + ": not hermitian within tolerance");
}

/// (A + A^dagger)/2; used only on matrices this library computed itself.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) / 2.0; }

/// All eigenvalues of a hermitian matrix, nonincreasing.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  require_hermitian(a, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("hermitian_eigenvalues: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Eigenvalues (ascending) and eigenvectors of a hermitian matrix, without the tolerance check.
inline Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigensystem(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) throw ConvergenceError("hermitian_eigensystem: eigensolver failed");
  return es;
}

inline double trace_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (double l : hermitian_eigenvalues(a)) s += std::abs(l);
  return s;
}

/// Reorders the tensor factors: output party q is input party order[q].
inline ComplexMatrix permute_subsystems(const ComplexMatrix& a, const DimsProfile& dims,
                                        const std::vector<int>& order) {
  detail::require_dims(a, dims, "permute_subsystems");
  const std::size_t n = dims.parties();
  detail::require<ShapeError>(order.size() == n, "permute_subsystems: order has wrong length");
  std::vector<int> seen(order);
  std::sort(seen.begin(), seen.end());
  for (std::size_t q = 0; q < n; ++q)
    detail::require<ShapeError>(seen[q] == static_cast<int>(q), "permute_subsystems: not a permutation");

  std::vector<int> out_dims(n);
  for (std::size_t q = 0; q < n; ++q) out_dims[q] = dims[order[q]];

  const int total = dims.total();
  std::vector<int> map(total);  // input index -> output index
  for (int i = 0; i < total; ++i) {
    auto dig = detail::digits_of(i, dims.values());
    std::vector<int> out_dig(n);
    for (std::size_t q = 0; q < n; ++q) out_dig[q] = dig[order[q]];
    map[i] = detail::index_of(out_dig, out_dims);
  }
  ComplexMatrix out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) out(map[r], map[c]) = a(r, c);
  return out;
}

/// Partial transpose over every party flagged in `transpose_party`.
inline ComplexMatrix partial_transpose_mask(const ComplexMatrix& a, const DimsProfile& dims,
                                            const std::vector<bool>& transpose_party) {
  detail::require_dims(a, dims, "partial_transpose");
  detail::require<ShapeError>(transpose_party.size() == dims.parties(), "partial_transpose: mask has wrong length");
  const int total = dims.total();
  std::vector<std::vector<int>> digits(total);
  for (int i = 0; i < total; ++i) digits[i] = detail::digits_of(i, dims.values());

  ComplexMatrix out(total, total);
  std::vector<int> rd, cd;
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      rd = digits[r];
      cd = digits[c];
      for (std::size_t k = 0; k < dims.parties(); ++k)
        if (transpose_party[k]) std::swap(rd[k], cd[k]);
      out(detail::index_of(rd, dims.values()), detail::index_of(cd, dims.values())) = a(r, c);
    }
  }
  return out;
}

/// Bipartite partial transpose on party 0 (Alice) or 1 (Bob):
/// <i_A j_B| out |k_A l_B> = <k_A j_B| A |i_A l_B> for party 0.
inline ComplexMatrix partial_transpose(const ComplexMatrix& a, const DimsProfile& dims, int party) {
  detail::require<ShapeError>(dims.parties() == 2, "partial_transpose: exactly two parties required");
  detail::require<DomainError>(party == 0 || party == 1, "partial_transpose: party index must be 0 or 1");
  return partial_transpose_mask(a, dims, {party == 0, party == 1});
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require<ShapeError>(a.size() > 0 && b.size() > 0, "tensor_product: empty operand");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Traces out the listed parties; the remaining parties keep their relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& a, const DimsProfile& dims,
                                   const std::vector<int>& traced) {
  detail::require_dims(a, dims, "partial_trace");
  const std::size_t n = dims.parties();
  std::vector<bool> drop(n, false);
  for (int p : traced) {
    detail::require<ShapeError>(p >= 0 && static_cast<std::size_t>(p) < n, "partial_trace: party out of range");
    drop[p] = true;
  }
  std::vector<int> kept_dims, traced_dims;
  for (std::size_t k = 0; k < n; ++k) (drop[k] ? traced_dims : kept_dims).push_back(dims[k]);
  if (kept_dims.empty()) {
    ComplexMatrix out(1, 1);
    out(0, 0) = a.trace();
    return out;
  }
  const int dk = std::accumulate(kept_dims.begin(), kept_dims.end(), 1, std::multiplies<>());
  const int dt = std::accumulate(traced_dims.begin(), traced_dims.end(), 1, std::multiplies<>());

  // full index for (kept index, traced index)
  std::vector<int> compose(static_cast<std::size_t>(dk) * dt);
  for (int i = 0; i < dk; ++i) {
    auto kd = detail::digits_of(i, kept_dims);
    for (int t = 0; t < dt; ++t) {
      auto td = traced_dims.empty() ? std::vector<int>{} : detail::digits_of(t, traced_dims);
      std::vector<int> full(n);
      std::size_t ki = 0, ti = 0;
      for (std::size_t k = 0; k < n; ++k) full[k] = drop[k] ? td[ti++] : kd[ki++];
      compose[static_cast<std::size_t>(i) * dt + t] = detail::index_of(full, dims.values());
    }
  }
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j)
      for (int t = 0; t < dt; ++t)
        out(i, j) += a(compose[static_cast<std::size_t>(i) * dt + t], compose[static_cast<std::size_t>(j) * dt + t]);
  return out;
}

inline DimsProfile dims_without(const DimsProfile& dims, const std::vector<int>& traced) {
  std::vector<int> kept;
  for (std::size_t k = 0; k < dims.parties(); ++k)
    if (std::find(traced.begin(), traced.end(), static_cast<int>(k)) == traced.end()) kept.push_back(dims[k]);
  return DimsProfile(kept);
}

/// Projection onto the PSD cone in Frobenius norm (negative eigenvalues clipped to zero).
inline ComplexMatrix psd_projection(const ComplexMatrix& a) {
  auto es = hermitian_eigensystem(hermitian_part(a));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace neglab
