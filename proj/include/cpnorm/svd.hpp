// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cpnorm/complex_matrix.hpp"

namespace cpnorm {

// A = left * diag(singular_values) * right^H, singular values descending.
// Square inputs only. Built from Hermitian eigendecompositions of A^H A and
// A A^H: right singular vectors come from A^H A, left ones from A w / sigma
// for sigma above the rank cutoff, and the null directions are completed
// from the A A^H basis, so both factors are unitary even for singular A.
struct Svd {
  ComplexMatrix left;
  std::vector<double> singular_values;
  ComplexMatrix right;
};

inline constexpr double kRankTolScale = 1e-12;

Svd svd(const ComplexMatrix& a);

// |A| = (A^H A)^{1/2}; Hermitian PSD, eigenvalues = singular values of A.
ComplexMatrix matrix_abs(const ComplexMatrix& a);

// Unitary U with (A A^H)^{1/2} = U |A| U^H, i.e. U = left * right^H from the
// SVD. Well-defined (via basis completion) for singular A too.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

}  // namespace cpnorm
