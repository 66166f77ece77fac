// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cpnorm/complex_matrix.hpp"

namespace cpnorm {

// Tolerances shared across the numerical layer.
//
// kHermTol bounds the accepted deviation from exact Hermiticity, scaled by
// (1 + max|entry|). kPsdClipTol separates eigenvalue roundoff (clipped to 0)
// from genuine indefiniteness (an error) on nominally PSD inputs.
inline constexpr double kHermTolScale = 1e-9;
inline constexpr double kPsdClipTol = 1e-10;
inline constexpr double kJacobiOffTol = 1e-14;

struct HermitianEigen {
  std::vector<double> eigenvalues;  // sorted descending
  ComplexMatrix eigenvectors;       // orthonormal columns, paired by index
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. The input is symmetrized internally; deviations from
// Hermiticity beyond kHermTolScale * (1 + max|entry|) are an error, as is a
// non-square input. Sweeps stop once the off-diagonal Frobenius mass drops
// below kJacobiOffTol times the diagonal mass.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

// V diag(f(lambda)) V^H for an eigensystem.
ComplexMatrix eigen_recompose(const HermitianEigen& eig,
                              const std::vector<double>& values);

// Eigenvalues of a nominally PSD Hermitian matrix with roundoff negatives
// (magnitude <= kPsdClipTol) clipped to zero; larger negativity throws.
std::vector<double> psd_eigenvalues(const HermitianEigen& eig);

// P^t = V diag(lambda^t) V^H for PSD P and t >= 0 (t < 0 rejected).
ComplexMatrix psd_power(const ComplexMatrix& p, double t);

}  // namespace cpnorm
