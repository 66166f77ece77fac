// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These are the portable ground truth the SIMD
// variants are equivalence-tested against; the arithmetic is written out on
// real/imaginary parts so both backends share the same operation structure.

#include <algorithm>
#include <cmath>

#include "cpnorm/kernels.hpp"

namespace cpnorm::kern {
namespace {

inline cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx cmul_conj2(cplx a, cplx b) {  // a * conj(b)
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.imag() * b.real() - a.real() * b.imag()};
}

void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    if (!accumulate) std::fill(crow, crow + n, cplx{0.0, 0.0});
    const cplx* arow = a + i * lda;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx av = arow[l];
      const cplx* brow = b + l * ldb;
      for (std::size_t j = 0; j < n; ++j) crow[j] += cmul(av, brow[j]);
    }
  }
}

void gemm_cn(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    if (!accumulate) std::fill(crow, crow + n, cplx{0.0, 0.0});
    for (std::size_t l = 0; l < k; ++l) {
      const cplx av = std::conj(a[l * lda + i]);
      const cplx* brow = b + l * ldb;
      for (std::size_t j = 0; j < n; ++j) crow[j] += cmul(av, brow[j]);
    }
  }
}

void gemm_nc(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * lda;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * ldb;
      cplx acc{0.0, 0.0};
      for (std::size_t l = 0; l < k; ++l) acc += cmul_conj2(arow[l], brow[l]);
      cplx& dst = c[i * ldc + j];
      dst = accumulate ? dst + acc : acc;
    }
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += cmul(alpha, x[i]);
}

void scal(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] = cmul(alpha, x[i]);
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += cmul_conj2(y[i], x[i]);
  return acc;
}

double sumsq(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

double max_abs(std::size_t n, const cplx* x) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    best = std::max(best, sq);
  }
  return std::sqrt(best);
}

void rot2(std::size_t n, cplx* x, cplx* y, std::size_t stride, double c,
          cplx s) {
  const cplx sc = std::conj(s);
  for (std::size_t i = 0; i < n; ++i) {
    cplx& xi = x[i * stride];
    cplx& yi = y[i * stride];
    const cplx xv = xi;
    const cplx yv = yi;
    xi = c * xv - cmul(sc, yv);
    yi = cmul(s, xv) + c * yv;
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{"scalar", gemm_nn, gemm_cn, gemm_nc, axpy,
                             scal,     dotc,    sumsq,   max_abs, rot2};
  return table;
}

}  // namespace cpnorm::kern
