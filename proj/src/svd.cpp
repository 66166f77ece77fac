// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/svd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cpnorm/eig.hpp"
#include "cpnorm/kernels.hpp"

namespace cpnorm {

namespace {

// Modified Gram-Schmidt on the columns of m, in place, left to right.
void orthonormalize_columns(ComplexMatrix& m) {
  const std::size_t d = m.rows();
  const auto& k = kern::active();
  std::vector<cplx> col(d), prev(d);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < d; ++r) col[r] = m(r, c);
    for (std::size_t pc = 0; pc < c; ++pc) {
      for (std::size_t r = 0; r < d; ++r) prev[r] = m(r, pc);
      const cplx proj = k.dotc(d, prev.data(), col.data());
      k.axpy(d, -proj, prev.data(), col.data());
    }
    const double nrm = std::sqrt(k.sumsq(d, col.data()));
    if (nrm > 0.0) {
      k.scal(d, cplx{1.0 / nrm, 0.0}, col.data());
    }
    for (std::size_t r = 0; r < d; ++r) m(r, c) = col[r];
  }
}

}  // namespace

Svd svd(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("svd: only square matrices supported");
  }
  if (!a.all_finite()) {
    throw std::invalid_argument("svd: non-finite entries");
  }
  const std::size_t d = a.rows();
  const auto& k = kern::active();

  const HermitianEigen right_eig = hermitian_eig(mul_cn(a, a));
  Svd out;
  out.right = right_eig.eigenvectors;

  // sigma_i = ||A w_i|| rather than sqrt(eig(A^H A)): for singular values
  // near zero the eigenvalue route inflates roundoff to sqrt(eps) while the
  // action norm keeps it at eps.
  ComplexMatrix aw = mul(a, out.right);
  std::vector<double> sigma(d);
  std::vector<cplx> col(d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) col[r] = aw(r, c);
    sigma[c] = std::sqrt(k.sumsq(d, col.data()));
  }
  // restore descending order if the recomputation swapped near-ties
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return sigma[x] > sigma[y];
                   });
  out.singular_values.resize(d);
  ComplexMatrix right_sorted(d, d);
  ComplexMatrix aw_sorted(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    out.singular_values[c] = sigma[order[c]];
    for (std::size_t r = 0; r < d; ++r) {
      right_sorted(r, c) = out.right(r, order[c]);
      aw_sorted(r, c) = aw(r, order[c]);
    }
  }
  out.right = std::move(right_sorted);
  aw = std::move(aw_sorted);

  const double sigma_max = out.singular_values.front();
  const double tau_rank = kRankTolScale * sigma_max;

  // Left vectors: A w / sigma pins the phase pairing for healthy sigma.
  out.left = ComplexMatrix(d, d);
  std::vector<std::size_t> deficient;
  for (std::size_t c = 0; c < d; ++c) {
    if (out.singular_values[c] > tau_rank && out.singular_values[c] > 0.0) {
      const double inv = 1.0 / out.singular_values[c];
      for (std::size_t r = 0; r < d; ++r) out.left(r, c) = inv * aw(r, c);
    } else {
      deficient.push_back(c);
    }
  }

  if (!deficient.empty()) {
    // Complete the basis from the small-eigenvalue end of A A^H, falling
    // back to standard basis vectors under extreme degeneracy.
    const HermitianEigen left_eig = hermitian_eig(mul_nc(a, a));
    std::vector<std::vector<cplx>> candidates;
    for (std::size_t c = d; c-- > 0;) {
      std::vector<cplx> v(d);
      for (std::size_t r = 0; r < d; ++r) v[r] = left_eig.eigenvectors(r, c);
      candidates.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<cplx> v(d, cplx{0.0, 0.0});
      v[j] = 1.0;
      candidates.push_back(std::move(v));
    }

    std::vector<std::size_t> filled;
    for (std::size_t c = 0; c < d; ++c) {
      if (out.singular_values[c] > tau_rank && out.singular_values[c] > 0.0) {
        filled.push_back(c);
      }
    }
    std::vector<cplx> col(d), other(d);
    std::size_t next_candidate = 0;
    for (std::size_t slot : deficient) {
      bool placed = false;
      while (!placed && next_candidate < candidates.size()) {
        col = candidates[next_candidate++];
        for (std::size_t oc : filled) {
          for (std::size_t r = 0; r < d; ++r) other[r] = out.left(r, oc);
          const cplx proj = k.dotc(d, other.data(), col.data());
          k.axpy(d, -proj, other.data(), col.data());
        }
        const double nrm = std::sqrt(k.sumsq(d, col.data()));
        if (nrm > 0.5) {
          k.scal(d, cplx{1.0 / nrm, 0.0}, col.data());
          for (std::size_t r = 0; r < d; ++r) out.left(r, slot) = col[r];
          filled.push_back(slot);
          placed = true;
        }
      }
      if (!placed) {
        throw std::runtime_error("svd: left basis completion failed");
      }
    }
  }

  orthonormalize_columns(out.left);
  return out;
}

ComplexMatrix matrix_abs(const ComplexMatrix& a) {
  const Svd s = svd(a);
  ComplexMatrix scaled = s.right;
  for (std::size_t c = 0; c < scaled.cols(); ++c) {
    for (std::size_t r = 0; r < scaled.rows(); ++r) {
      scaled(r, c) *= s.singular_values[c];
    }
  }
  return mul_nc(scaled, s.right).hermitian_part();
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  const Svd s = svd(a);
  return mul_nc(s.left, s.right);
}

}  // namespace cpnorm
