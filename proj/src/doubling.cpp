// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/doubling.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "cpnorm/eig.hpp"
#include "cpnorm/svd.hpp"

namespace cpnorm {

namespace {

double rel_err(double computed, double reference) {
  return std::abs(computed - reference) /
         (1.0 + std::max(std::abs(computed), std::abs(reference)));
}

}  // namespace

DoubledOperator build_doubled(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("build_doubled: A must be square");
  }
  const std::size_t d = a.rows();
  const ComplexMatrix zero(d, d);
  DoubledOperator out;
  out.base = a;
  out.assembled = block2x2(zero, a, a.adjoint(), zero);
  return out;
}

ComplexMatrix abs_doubled(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("abs_doubled: A must be square");
  }
  const ComplexMatrix abs_a = matrix_abs(a);
  const ComplexMatrix u = polar_unitary(a);
  // U |A| U^H = (A A^H)^{1/2}
  const ComplexMatrix top = mul_nc(mul(u, abs_a), u).hermitian_part();
  return direct_sum(top, abs_a);
}

std::pair<double, double> doubled_output_trace(const MapRef& phi,
                                               const ComplexMatrix& a,
                                               double q) {
  if (a.rows() != phi.d_in() || a.cols() != phi.d_in()) {
    throw std::invalid_argument("doubled_output_trace: dimension mismatch");
  }
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("doubled_output_trace: q must be finite >= 1");
  }
  const DoubledOperator dq = build_doubled(a);
  const ComplexMatrix out = apply_extended2(phi, dq.assembled);
  const double lhs = std::pow(schatten_norm(out, SchattenExponent(q)), q);
  const double ref = 2.0 * trace_power(matrix_abs(phi.apply(a)), q);
  return {lhs, ref};
}

std::pair<double, double> doubled_abs_output_trace(const MapRef& phi,
                                                   const ComplexMatrix& a,
                                                   double q) {
  if (a.rows() != phi.d_in() || a.cols() != phi.d_in()) {
    throw std::invalid_argument(
        "doubled_abs_output_trace: dimension mismatch");
  }
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument(
        "doubled_abs_output_trace: q must be finite >= 1");
  }
  const ComplexMatrix abs_q = abs_doubled(a);
  const ComplexMatrix out = apply_extended2(phi, abs_q);
  // complete positivity keeps the extended output PSD
  psd_eigenvalues(hermitian_eig(out));
  const double lhs = std::pow(schatten_norm(out, SchattenExponent(q)), q);

  const ComplexMatrix abs_a = matrix_abs(a);
  const ComplexMatrix u = polar_unitary(a);
  const ComplexMatrix conj_abs = mul_nc(mul(u, abs_a), u).hermitian_part();
  const double ref =
      trace_power(phi.apply(conj_abs), q) + trace_power(phi.apply(abs_a), q);
  return {lhs, ref};
}

double amosov_holevo_check(const MapRef& omega, const ComplexMatrix& x,
                           SchattenExponent q) {
  if (x.rows() != omega.d_in() || x.cols() != omega.d_in()) {
    throw std::invalid_argument("amosov_holevo_check: dimension mismatch");
  }
  const double herm_tol = kHermTolScale * (1.0 + x.max_abs());
  if (hermitian_deviation(x) > herm_tol) {
    throw std::invalid_argument("amosov_holevo_check: X must be Hermitian");
  }
  const ComplexMatrix xh = x.hermitian_part();
  const double with_abs = schatten_norm(omega.apply(matrix_abs(xh)), q);
  const double plain = schatten_norm(omega.apply(xh), q);
  return with_abs - plain;
}

ProofChainReport verify_proof_chain(const MapRef& phi, const ComplexMatrix& a,
                                    SchattenExponent p, double q,
                                    double norm_pq_ref,
                                    const ChainTolerances& tol) {
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("verify_proof_chain: q must be finite >= 1");
  }
  const double p_norm = schatten_norm(a, p);
  if (p_norm == 0.0) {
    throw std::invalid_argument("verify_proof_chain: A must be nonzero");
  }
  const ComplexMatrix unit_a = (1.0 / p_norm) * a;

  ProofChainReport r;
  r.p = p.value();
  r.q = q;

  // (i) ||(Phi (x) 1_2)(Q)||_q^q = 2 Tr|Phi(A)|^q
  std::tie(r.doubling_lhs, r.doubling_ref) =
      doubled_output_trace(phi, unit_a, q);
  r.doubling_rel_err = rel_err(r.doubling_lhs, r.doubling_ref);
  r.doubling_pass = r.doubling_rel_err <= tol.relative;

  // (ii) |Q| block formula matches the direct matrix absolute value
  const DoubledOperator dq = build_doubled(unit_a);
  r.abs_block_residual =
      max_abs_diff(abs_doubled(unit_a), matrix_abs(dq.assembled));
  r.abs_block_pass = r.abs_block_residual <= tol.elementwise;

  // (iii) AH inequality applied to (Phi (x) 1_2, Q), plus the identity for
  // the absolute-value side
  std::tie(r.abs_trace_lhs, r.abs_trace_ref) =
      doubled_abs_output_trace(phi, unit_a, q);
  r.abs_trace_rel_err = rel_err(r.abs_trace_lhs, r.abs_trace_ref);
  r.abs_trace_pass = r.abs_trace_rel_err <= tol.relative;

  // margin in q-th-power form: (Tr Phi(U|A|U^H)^q + Tr Phi(|A|)^q)
  //   - 2 Tr|Phi(A)|^q >= 0
  r.ah_margin = r.abs_trace_ref - r.doubling_ref;
  r.ah_pass = r.ah_margin >= -tol.margin;

  // (iv) each right-hand term is bounded by the norm certificate, both
  // inputs having unit p-norm
  const ComplexMatrix abs_a = matrix_abs(unit_a);
  const ComplexMatrix u = polar_unitary(unit_a);
  const ComplexMatrix conj_abs = mul_nc(mul(u, abs_a), u).hermitian_part();
  const double bound = std::pow(norm_pq_ref, q);
  const double m1 = bound - trace_power(phi.apply(conj_abs), q);
  const double m2 = bound - trace_power(phi.apply(abs_a), q);
  r.final_margin = std::min(m1, m2);
  r.final_pass = r.final_margin >= -tol.final_margin;

  return r;
}

}  // namespace cpnorm
