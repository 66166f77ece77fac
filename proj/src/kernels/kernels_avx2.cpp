// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernels. Compiled with -mavx2 -mfma and reached only after a
// runtime CPU capability check, so the rest of the library can be built for
// a generic x86-64 baseline. Complex doubles are interleaved (re, im); one
// 256-bit vector carries two of them.

#include "cpnorm/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace cpnorm::kern {
namespace {

inline const double* dp(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// [a0, b0] * [a1, b1] per complex lane: full complex product.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_unpackhi_pd(a, a);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

// Sign mask that conjugates both complex lanes.
inline __m256d conj_mask() { return _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); }

// a * conj(b) == cmul(conj(b), a).
inline __m256d cmul_conj2(__m256d a, __m256d b) {
  return cmul(_mm256_xor_pd(b, conj_mask()), a);
}

// Broadcast complex scalar times vector: (are + i*aim) * b.
inline __m256d cmul_bcast(__m256d are, __m256d aim, __m256d b) {
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline cplx reduce_cplx(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline double reduce_add(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double reduce_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline cplx scalar_cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx scalar_cmul_conj2(cplx a, cplx b) {
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.imag() * b.real() - a.real() * b.imag()};
}

void gemm_nn(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    const cplx* arow = a + i * lda;
    for (std::size_t j = 0; j < n2; j += 2) {
      __m256d acc = accumulate ? _mm256_loadu_pd(dp(crow + j))
                               : _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const cplx av = arow[l];
        const __m256d are = _mm256_set1_pd(av.real());
        const __m256d aim = _mm256_set1_pd(av.imag());
        const __m256d bv = _mm256_loadu_pd(dp(b + l * ldb + j));
        acc = _mm256_add_pd(acc, cmul_bcast(are, aim, bv));
      }
      _mm256_storeu_pd(dp(crow + j), acc);
    }
    if (n2 < n) {
      const std::size_t j = n2;
      cplx acc = accumulate ? crow[j] : cplx{0.0, 0.0};
      for (std::size_t l = 0; l < k; ++l) {
        acc += scalar_cmul(arow[l], b[l * ldb + j]);
      }
      crow[j] = acc;
    }
  }
}

void gemm_cn(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * ldc;
    for (std::size_t j = 0; j < n2; j += 2) {
      __m256d acc = accumulate ? _mm256_loadu_pd(dp(crow + j))
                               : _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const cplx av = std::conj(a[l * lda + i]);
        const __m256d are = _mm256_set1_pd(av.real());
        const __m256d aim = _mm256_set1_pd(av.imag());
        const __m256d bv = _mm256_loadu_pd(dp(b + l * ldb + j));
        acc = _mm256_add_pd(acc, cmul_bcast(are, aim, bv));
      }
      _mm256_storeu_pd(dp(crow + j), acc);
    }
    if (n2 < n) {
      const std::size_t j = n2;
      cplx acc = accumulate ? crow[j] : cplx{0.0, 0.0};
      for (std::size_t l = 0; l < k; ++l) {
        acc += scalar_cmul(std::conj(a[l * lda + i]), b[l * ldb + j]);
      }
      crow[j] = acc;
    }
  }
}

void gemm_nc(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
             std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
             std::size_t ldc, bool accumulate) {
  const std::size_t k2 = k & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * lda;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * ldb;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k2; l += 2) {
        const __m256d av = _mm256_loadu_pd(dp(arow + l));
        const __m256d bv = _mm256_loadu_pd(dp(brow + l));
        acc = _mm256_add_pd(acc, cmul_conj2(av, bv));
      }
      cplx sum = reduce_cplx(acc);
      if (k2 < k) sum += scalar_cmul_conj2(arow[k2], brow[k2]);
      cplx& dst = c[i * ldc + j];
      dst = accumulate ? dst + sum : sum;
    }
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i),
                     _mm256_add_pd(yv, cmul_bcast(are, aim, xv)));
  }
  if (n2 < n) y[n2] += scalar_cmul(alpha, x[n2]);
}

void scal(std::size_t n, cplx alpha, cplx* x) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    _mm256_storeu_pd(dp(x + i), cmul_bcast(are, aim, xv));
  }
  if (n2 < n) x[n2] = scalar_cmul(alpha, x[n2]);
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    acc = _mm256_add_pd(acc, cmul(_mm256_xor_pd(xv, conj_mask()), yv));
  }
  cplx sum = reduce_cplx(acc);
  if (n2 < n) sum += scalar_cmul_conj2(y[n2], x[n2]);
  return sum;
}

double sumsq(std::size_t n, const cplx* x) {
  const double* xd = dp(x);
  const std::size_t d = 2 * n;
  const std::size_t d4 = d & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < d4; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double sum = reduce_add(acc);
  for (std::size_t i = d4; i < d; ++i) sum += xd[i] * xd[i];
  return sum;
}

double max_abs(std::size_t n, const cplx* x) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d best = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    const __m256d sq = _mm256_mul_pd(v, v);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  double m = reduce_max(best);
  if (n2 < n) {
    const double sq =
        x[n2].real() * x[n2].real() + x[n2].imag() * x[n2].imag();
    m = std::max(m, sq);
  }
  return std::sqrt(m);
}

void rot2(std::size_t n, cplx* x, cplx* y, std::size_t stride, double c,
          cplx s) {
  if (stride == 1) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sre = _mm256_set1_pd(s.real());
    const __m256d sim = _mm256_set1_pd(s.imag());
    const __m256d scre = sre;
    const __m256d scim = _mm256_set1_pd(-s.imag());
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < n2; i += 2) {
      const __m256d xv = _mm256_loadu_pd(dp(x + i));
      const __m256d yv = _mm256_loadu_pd(dp(y + i));
      const __m256d xn =
          _mm256_sub_pd(_mm256_mul_pd(cv, xv), cmul_bcast(scre, scim, yv));
      const __m256d yn =
          _mm256_add_pd(cmul_bcast(sre, sim, xv), _mm256_mul_pd(cv, yv));
      _mm256_storeu_pd(dp(x + i), xn);
      _mm256_storeu_pd(dp(y + i), yn);
    }
    for (std::size_t i = n2; i < n; ++i) {
      const cplx xv = x[i];
      const cplx yv = y[i];
      x[i] = c * xv - scalar_cmul(std::conj(s), yv);
      y[i] = scalar_cmul(s, xv) + c * yv;
    }
    return;
  }
  const cplx sc = std::conj(s);
  for (std::size_t i = 0; i < n; ++i) {
    cplx& xi = x[i * stride];
    cplx& yi = y[i * stride];
    const cplx xv = xi;
    const cplx yv = yi;
    xi = c * xv - scalar_cmul(sc, yv);
    yi = scalar_cmul(s, xv) + c * yv;
  }
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels table{"avx2", gemm_nn, gemm_cn, gemm_nc, axpy,
                             scal,   dotc,    sumsq,   max_abs, rot2};
  return table;
}

}  // namespace cpnorm::kern

#endif  // x86; on other architectures this TU is empty and the dispatcher
        // never references the AVX2 table.
