#include <gtest/gtest.h>

#include <cmath>

#include "neglab/linalg.hpp"
#include "neglab/random.hpp"
#include "neglab/states.hpp"

using namespace neglab;

namespace {

ComplexMatrix random_hermitian(int n, Rng& rng) {
  ComplexMatrix g = ginibre(n, n, rng);
  return hermitian_part(g);
}

// Brute-force index shuffle: <i j| out |k l> = <k j| A |i l>.
ComplexMatrix pt_oracle(const ComplexMatrix& a, int da, int db) {
  ComplexMatrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * db + j, k * db + l) = a(k * db + j, i * db + l);
  return out;
}

ComplexMatrix bell_pt() {
  return partial_transpose(maximally_entangled(2).matrix(), DimsProfile{2, 2}, 0);
}

}  // namespace

TEST(HermitianEigenvalues, IdentityAndDiagonal) {
  auto ev = hermitian_eigenvalues(ComplexMatrix::Identity(3, 3));
  ASSERT_EQ(ev.size(), 3u);
  for (double l : ev) EXPECT_DOUBLE_EQ(l, 1.0);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = -1.0;
  d(1, 1) = 2.0;
  ev = hermitian_eigenvalues(d);
  EXPECT_NEAR(ev[0], 2.0, 1e-14);
  EXPECT_NEAR(ev[1], -1.0, 1e-14);
}

TEST(HermitianEigenvalues, BellPartialTranspose) {
  // Bell PT is the swap operator / 2: eigenvalues +1/2 (x3), -1/2.
  auto ev = hermitian_eigenvalues(bell_pt());
  const std::vector<double> expected{0.5, 0.5, 0.5, -0.5};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], expected[k], 1e-14);
}

TEST(HermitianEigenvalues, SumEqualsTraceAndSorted) {
  Rng rng(11);
  for (int n : {2, 5, 16, 36, 64}) {
    ComplexMatrix a = random_hermitian(n, rng);
    auto ev = hermitian_eigenvalues(a);
    double sum = 0.0;
    for (double l : ev) sum += l;
    EXPECT_NEAR(sum, a.trace().real(), 1e-10 * n);
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end(), std::greater<>()));
  }
}

TEST(HermitianEigenvalues, RejectsBadInput) {
  EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)), ShapeError);
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = Complex(0.0, 1e-6);
  EXPECT_THROW(hermitian_eigenvalues(a), InvariantError);
  // tolerance is relative to max|A|: 1e-13 asymmetry on O(1) entries passes
  a(0, 1) = Complex(0.0, 1e-13);
  EXPECT_NO_THROW(hermitian_eigenvalues(a));
}

TEST(TraceNorm, Anchors) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  EXPECT_NEAR(trace_norm(d), 3.0, 1e-14);
  EXPECT_NEAR(trace_norm(bell_pt()), 2.0, 1e-13);

  Rng rng(3);
  for (int k = 0; k < 20; ++k) EXPECT_NEAR(trace_norm(random_density(DimsProfile{3, 3}, 1 + k % 9, rng).matrix()), 1.0, 1e-10);
}

TEST(TraceNorm, IsANorm) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = random_hermitian(6, rng);
    const ComplexMatrix b = random_hermitian(6, rng);
    EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-9);
    const double s = u(rng);
    EXPECT_NEAR(trace_norm(s * a), std::abs(s) * trace_norm(a), 1e-9);
  }
}

TEST(PartialTranspose, MatchesIndexShuffleOracle) {
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix a = random_hermitian(6, rng);
    const ComplexMatrix pt = partial_transpose(a, DimsProfile{2, 3}, 0);
    EXPECT_EQ(pt, pt_oracle(a, 2, 3));
    // Bob's partial transpose is the full transpose of Alice's
    EXPECT_EQ(partial_transpose(a, DimsProfile{2, 3}, 1), ComplexMatrix(pt.transpose()));
  }
}

TEST(PartialTranspose, InvolutionAndPreservation) {
  Rng rng(8);
  const ComplexMatrix a = random_hermitian(12, rng);
  const DimsProfile dims{3, 4};
  const ComplexMatrix pt = partial_transpose(a, dims, 0);
  EXPECT_EQ(partial_transpose(pt, dims, 0), a);  // exact
  EXPECT_TRUE(is_hermitian(pt));
  EXPECT_NEAR(std::abs(pt.trace() - a.trace()), 0.0, 1e-14);
}

TEST(PartialTranspose, ProductStateTransposesAliceFactor) {
  Rng rng(9);
  const ComplexMatrix ra = random_density(DimsProfile{3}, 3, rng).matrix();
  const ComplexMatrix rb = random_density(DimsProfile{2}, 2, rng).matrix();
  const ComplexMatrix pt = partial_transpose(tensor_product(ra, rb), DimsProfile{3, 2}, 0);
  EXPECT_LE(max_abs(pt - tensor_product(ComplexMatrix(ra.transpose()), rb)), 1e-15);
}

TEST(PartialTranspose, CommutesWithTensorProducts) {
  Rng rng(10);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix r1 = random_density(DimsProfile{2, 3}, 2, rng).matrix();
    const ComplexMatrix r2 = random_density(DimsProfile{2, 2}, 3, rng).matrix();
    const DimsProfile four{2, 3, 2, 2};
    const std::vector<int> regroup{0, 2, 1, 3};  // (A1 B1 A2 B2) -> (A1 A2 B1 B2)
    const ComplexMatrix joint = permute_subsystems(tensor_product(r1, r2), four, regroup);
    const ComplexMatrix lhs = partial_transpose(joint, DimsProfile{4, 6}, 0);
    const ComplexMatrix rhs = permute_subsystems(
        tensor_product(partial_transpose(r1, DimsProfile{2, 3}, 0), partial_transpose(r2, DimsProfile{2, 2}, 0)), four,
        regroup);
    EXPECT_LE(max_abs(lhs - rhs), 1e-12);
  }
}

TEST(PartialTranspose, TraceNormGrowthBounded) {
  Rng rng(12);
  for (int m : {2, 3, 4}) {
    for (int k = 0; k < 30; ++k) {
      const ComplexMatrix a = random_hermitian(m * m, rng);
      EXPECT_LE(trace_norm(partial_transpose(a, DimsProfile{m, m}, 0)), m * trace_norm(a) + 1e-9);
    }
  }
}

TEST(PartialTranspose, Errors) {
  const ComplexMatrix a = ComplexMatrix::Identity(6, 6);
  EXPECT_THROW(partial_transpose(a, DimsProfile{2, 2}, 0), ShapeError);
  EXPECT_THROW(partial_transpose(a, DimsProfile{1, 2, 3}, 0), ShapeError);
  EXPECT_THROW(partial_transpose(a, DimsProfile{2, 3}, 2), DomainError);
}

TEST(TensorAndPartialTrace, Anchors) {
  EXPECT_EQ(tensor_product(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(3, 3))), ComplexMatrix::Identity(6, 6));

  const ComplexMatrix marginal = partial_trace(maximally_entangled(2).matrix(), DimsProfile{2, 2}, {1});
  EXPECT_LE(max_abs(marginal - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);

  Rng rng(13);
  const ComplexMatrix ra = random_density(DimsProfile{3}, 3, rng).matrix();
  const ComplexMatrix rb = random_density(DimsProfile{2}, 2, rng).matrix();
  const ComplexMatrix prod = tensor_product(ra, rb);
  EXPECT_NEAR(std::abs(prod.trace() - ra.trace() * rb.trace()), 0.0, 1e-14);
  EXPECT_LE(max_abs(partial_trace(prod, DimsProfile{3, 2}, {1}) - ra), 1e-14);
  EXPECT_LE(max_abs(partial_trace(prod, DimsProfile{3, 2}, {0}) - rb), 1e-14);
}

TEST(TensorAndPartialTrace, MultipartyTracePreservesTrace) {
  Rng rng(14);
  const DimsProfile dims{2, 3, 2};
  const ComplexMatrix r = random_density(dims, 4, rng).matrix();
  for (const auto& traced : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const ComplexMatrix red = partial_trace(r, dims, traced);
    EXPECT_EQ(red.rows(), dims_without(dims, traced).total());
    EXPECT_NEAR(std::abs(red.trace() - 1.0), 0.0, 1e-13);
  }
  // tracing in two steps equals tracing at once
  const ComplexMatrix two_step = partial_trace(partial_trace(r, dims, {2}), DimsProfile{2, 3}, {0});
  EXPECT_LE(max_abs(two_step - partial_trace(r, dims, {0, 2})), 1e-14);
  EXPECT_THROW(partial_trace(r, dims, {3}), ShapeError);
  EXPECT_THROW(partial_trace(r, DimsProfile{2, 2}, {0}), ShapeError);
}

TEST(PermuteSubsystems, SwapOfProduct) {
  Rng rng(15);
  const ComplexMatrix ra = random_density(DimsProfile{2}, 2, rng).matrix();
  const ComplexMatrix rb = random_density(DimsProfile{3}, 3, rng).matrix();
  EXPECT_LE(max_abs(permute_subsystems(tensor_product(ra, rb), DimsProfile{2, 3}, {1, 0}) - tensor_product(rb, ra)),
            1e-15);
  EXPECT_THROW(permute_subsystems(ra, DimsProfile{2}, {1}), ShapeError);
}
