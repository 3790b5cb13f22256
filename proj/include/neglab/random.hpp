#pragma once

// Seeded sampling primitives. Every sampler takes the generator by reference;
// nothing in the library owns or shares a global generator.

#include <cmath>
#include <cstdint>
#include <random>

#include "neglab/linalg.hpp"

namespace neglab {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Matrix with i.i.d. standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

inline RealMatrix gaussian_real(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RealMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = nd(rng);
  return g;
}

/// Haar-distributed isometry (rows >= cols): Q from the QR factorisation of a
/// Ginibre matrix with the phases of diag(R) absorbed into Q.
inline ComplexMatrix haar_isometry(int rows, int cols, Rng& rng) {
  detail::require<ShapeError>(rows >= cols && cols >= 1, "haar_isometry: need rows >= cols >= 1");
  ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    if (m > 0.0) q.col(j) *= d / m;
  }
  return q;
}

inline ComplexMatrix haar_unitary(int n, Rng& rng) { return haar_isometry(n, n, rng); }

/// Haar-distributed real orthogonal matrix (sign-fixed QR of a real Gaussian matrix).
inline RealMatrix haar_orthogonal(int n, Rng& rng) {
  RealMatrix g = gaussian_real(n, n, rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

inline ComplexVector random_unit_vector(int n, Rng& rng) {
  ComplexVector v = ginibre(n, 1, rng);
  return v / v.norm();
}

}  // namespace neglab
