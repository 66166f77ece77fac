// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cpnorm/kernels.hpp"

namespace cpnorm {

namespace {

double offdiag_sumsq(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      s += std::norm(m(i, j));
    }
  }
  return s;
}

double diag_sumsq(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, i));
  return s;
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& input) {
  if (!input.is_square()) {
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  }
  if (!input.all_finite()) {
    throw std::invalid_argument("hermitian_eig: non-finite entries");
  }
  const double herm_tol = kHermTolScale * (1.0 + input.max_abs());
  if (hermitian_deviation(input) > herm_tol) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }

  const std::size_t d = input.rows();
  ComplexMatrix m = input.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const auto& k = kern::active();

  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    const double off2 = offdiag_sumsq(m);
    const double diag2 = diag_sumsq(m);
    if (off2 <= kJacobiOffTol * kJacobiOffTol * diag2 || off2 == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const cplx mpq = m(p, q);
        const double r = std::abs(mpq);
        if (r == 0.0) continue;
        // 2x2 Hermitian sub-problem: phase of the pivot times a real
        // Jacobi rotation with tan(2*theta) = 2r / (m_pp - m_qq).
        const cplx phase = mpq / r;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = phase * (t * c);

        // M <- U^H M U with U = [[c, s], [-conj(s), c]] on the (p, q) plane:
        // first the row pair, then the column pair, then V <- V U.
        k.rot2(d, m.data() + p * d, m.data() + q * d, 1, c, std::conj(s));
        k.rot2(d, m.data() + p, m.data() + q, d, c, s);
        k.rot2(d, v.data() + p, v.data() + q, d, c, s);
        m(p, q) = 0.0;
        m(q, p) = 0.0;
      }
    }
  }
  if (!converged) {
    // one last check; cyclic Jacobi on Hermitian input always gets here
    const double off2 = offdiag_sumsq(m);
    const double diag2 = diag_sumsq(m);
    if (off2 > kJacobiOffTol * kJacobiOffTol * diag2 && off2 != 0.0) {
      throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
    }
  }

  std::vector<double> lambda(d);
  for (std::size_t i = 0; i < d; ++i) lambda[i] = m(i, i).real();

  // sort descending, ties by first occurrence
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lambda[a] > lambda[b];
  });

  HermitianEigen out;
  out.eigenvalues.resize(d);
  out.eigenvectors = ComplexMatrix(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    out.eigenvalues[c] = lambda[order[c]];
    for (std::size_t r = 0; r < d; ++r) {
      out.eigenvectors(r, c) = v(r, order[c]);
    }
  }
  return out;
}

ComplexMatrix eigen_recompose(const HermitianEigen& eig,
                              const std::vector<double>& values) {
  const std::size_t d = eig.eigenvectors.rows();
  if (values.size() != d) {
    throw std::invalid_argument("eigen_recompose: value count mismatch");
  }
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) scaled(r, c) *= values[c];
  }
  // V diag * V^H, then fold out roundoff asymmetry
  return mul_nc(scaled, eig.eigenvectors).hermitian_part();
}

std::vector<double> psd_eigenvalues(const HermitianEigen& eig) {
  std::vector<double> out = eig.eigenvalues;
  for (double& lam : out) {
    if (lam < 0.0) {
      if (lam < -kPsdClipTol) {
        throw std::invalid_argument(
            "psd_eigenvalues: matrix is indefinite beyond clip tolerance");
      }
      lam = 0.0;
    }
  }
  return out;
}

ComplexMatrix psd_power(const ComplexMatrix& p, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("psd_power: exponent must be >= 0");
  }
  const HermitianEigen eig = hermitian_eig(p);
  std::vector<double> lam = psd_eigenvalues(eig);
  for (double& x : lam) x = std::pow(x, t);
  return eigen_recompose(eig, lam);
}

}  // namespace cpnorm
