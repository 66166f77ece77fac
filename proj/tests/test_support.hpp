// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared test oracles. Everything here is independent of the library's own
// eigensolver/SVD path: naive triple-loop products, Gauss-Jordan inversion,
// a Newton polar iteration for matrix absolute values, and closed-form 2x2 /
// 3x3 Hermitian eigenvalues.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cpnorm/complex_matrix.hpp"
#include "cpnorm/rng.hpp"

namespace testsup {

using cpnorm::ComplexMatrix;
using cpnorm::cplx;

inline ComplexMatrix naive_mul(const ComplexMatrix& a,
                               const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("naive_mul dims");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      c(i, j) = acc;
    }
  }
  return c;
}

// Gauss-Jordan with partial pivoting; test-only, so clarity over speed.
inline ComplexMatrix gauss_jordan_inverse(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: square only");
  const std::size_t d = a.rows();
  ComplexMatrix m = a;
  ComplexMatrix inv = ComplexMatrix::identity(d);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        pivot = r;
      }
    }
    if (best < 1e-300) throw std::runtime_error("inverse: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < d; ++c) {
        std::swap(m(col, c), m(pivot, c));
        std::swap(inv(col, c), inv(pivot, c));
      }
    }
    const cplx diag = m(col, col);
    for (std::size_t c = 0; c < d; ++c) {
      m(col, c) /= diag;
      inv(col, c) /= diag;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const cplx f = m(r, col);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < d; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

// Scaled Newton iteration for the unitary polar factor of a nonsingular A;
// |A| = U^H A. Independent of the library's Jacobi/SVD route.
inline ComplexMatrix newton_polar_abs(const ComplexMatrix& a) {
  ComplexMatrix x = a;
  for (int it = 0; it < 200; ++it) {
    const ComplexMatrix xinv_h = gauss_jordan_inverse(x).adjoint();
    const double gamma =
        std::sqrt(xinv_h.frobenius_norm() / x.frobenius_norm());
    ComplexMatrix next = x;
    next *= cplx{0.5 * gamma, 0.0};
    ComplexMatrix corr = xinv_h;
    corr *= cplx{0.5 / gamma, 0.0};
    next += corr;
    const double delta = cpnorm::max_abs_diff(next, x);
    x = next;
    if (delta < 1e-15) break;
  }
  return cpnorm::mul_cn(x, a).hermitian_part();
}

// Closed-form eigenvalues (descending) of a 2x2 Hermitian matrix.
inline std::vector<double> herm2_eigenvalues(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double c = m(1, 1).real();
  const double r = std::abs(m(0, 1));
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + r * r);
  return {mid + rad, mid - rad};
}

// Closed-form (Cardano) eigenvalues, descending, of a 3x3 Hermitian matrix.
inline std::vector<double> herm3_eigenvalues(const ComplexMatrix& m) {
  const double q = (m(0, 0).real() + m(1, 1).real() + m(2, 2).real()) / 3.0;
  ComplexMatrix b = m;
  for (int i = 0; i < 3; ++i) b(i, i) -= q;
  double p2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) p2 += std::norm(b(i, j));
  }
  const double p = std::sqrt(p2 / 6.0);
  if (p < 1e-300) return {q, q, q};
  ComplexMatrix bb = b;
  bb *= cplx{1.0 / p, 0.0};
  // det of the scaled deviator
  const cplx det = bb(0, 0) * (bb(1, 1) * bb(2, 2) - bb(1, 2) * bb(2, 1)) -
                   bb(0, 1) * (bb(1, 0) * bb(2, 2) - bb(1, 2) * bb(2, 0)) +
                   bb(0, 2) * (bb(1, 0) * bb(2, 1) - bb(1, 1) * bb(2, 0));
  double r = det.real() / 2.0;
  r = std::min(1.0, std::max(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double two_pi_3 = 2.0943951023931953;
  const double e1 = q + 2.0 * p * std::cos(phi);             // largest
  const double e3 = q + 2.0 * p * std::cos(phi + two_pi_3);  // smallest
  const double e2 = 3.0 * q - e1 - e3;
  return {e1, e2, e3};
}

// Largest singular value by power iteration on A^H A.
inline double power_sigma_max(const ComplexMatrix& a, cpnorm::Rng& rng,
                              int iters = 500) {
  const ComplexMatrix h = naive_mul(a.adjoint(), a);
  const std::size_t d = h.rows();
  ComplexMatrix v(d, 1);
  for (std::size_t i = 0; i < d; ++i) v(i, 0) = rng.normal_cplx();
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    ComplexMatrix w = naive_mul(h, v);
    const double n = w.frobenius_norm();
    if (n == 0.0) return 0.0;
    w *= cplx{1.0 / n, 0.0};
    lambda = n;
    v = w;
  }
  return std::sqrt(lambda);
}

inline ComplexMatrix random_unitary(cpnorm::Rng& rng, std::size_t d) {
  ComplexMatrix g = cpnorm::random_matrix(rng, d, d);
  // Gram-Schmidt columns
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t pc = 0; pc < c; ++pc) {
      cplx proj{0.0, 0.0};
      for (std::size_t r = 0; r < d; ++r) {
        proj += std::conj(g(r, pc)) * g(r, c);
      }
      for (std::size_t r = 0; r < d; ++r) g(r, c) -= proj * g(r, pc);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < d; ++r) n += std::norm(g(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < d; ++r) g(r, c) /= n;
  }
  return g;
}

inline ComplexMatrix random_psd(cpnorm::Rng& rng, std::size_t d) {
  const ComplexMatrix g = cpnorm::random_matrix(rng, d, d);
  return naive_mul(g.adjoint(), g).hermitian_part();
}

}  // namespace testsup
