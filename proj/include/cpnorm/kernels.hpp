// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace cpnorm::kern {

using cplx = std::complex<double>;

// Dense row-major complex-double kernels. Every data-parallel inner loop in
// the library funnels through this table, so the scalar reference and the
// SIMD variants stay interchangeable and equivalence-testable.
//
//   gemm_nn : C[m x n] (+)= A[m x k] * B[k x n]
//   gemm_cn : C[m x n] (+)= A^H * B, with A stored k x m
//   gemm_nc : C[m x n] (+)= A * B^H, with B stored n x k
//   axpy    : y += alpha * x
//   scal    : x *= alpha
//   dotc    : sum_i conj(x_i) * y_i
//   sumsq   : sum_i |x_i|^2
//   max_abs : max_i |x_i|
//   rot2    : plane rotation [[c, s], [-conj(s), c]] applied from the right
//             to the vector pair (x, y): x <- c*x - conj(s)*y,
//             y <- s*x + c*y. `stride` is the element step between
//             consecutive entries (1 for rows of a row-major matrix, the row
//             length for columns).
//
// `ld*` are leading dimensions in elements. Aliasing between C and A/B is not
// allowed in the gemm kernels.
struct Kernels {
  std::string_view name;

  void (*gemm_nn)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                  std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                  std::size_t ldc, bool accumulate);
  void (*gemm_cn)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                  std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                  std::size_t ldc, bool accumulate);
  void (*gemm_nc)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                  std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                  std::size_t ldc, bool accumulate);
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  void (*scal)(std::size_t n, cplx alpha, cplx* x);
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  double (*sumsq)(std::size_t n, const cplx* x);
  double (*max_abs)(std::size_t n, const cplx* x);
  void (*rot2)(std::size_t n, cplx* x, cplx* y, std::size_t stride, double c,
               cplx s);
};

enum class Backend { scalar, avx2 };

const Kernels& scalar_kernels();

bool backend_available(Backend b);

// The active table. Selected once on first use: the CPNORM_KERNELS
// environment variable ("scalar", "avx2", "auto") wins when set and
// satisfiable, otherwise the best available backend for the host CPU.
const Kernels& active();

// Test hooks. force_backend throws std::runtime_error if the requested
// backend is unavailable on this machine.
void force_backend(Backend b);
void reset_backend();

}  // namespace cpnorm::kern
