// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "cpnorm/channel.hpp"
#include "cpnorm/complex_matrix.hpp"
#include "cpnorm/schatten.hpp"

namespace cpnorm {

// Q = [[0, A], [A^H, 0]] on the doubled space: Hermitian for any square A,
// with spectrum {+-sigma_i(A)}.
struct DoubledOperator {
  ComplexMatrix base;       // A, d x d
  ComplexMatrix assembled;  // Q, 2d x 2d
};

DoubledOperator build_doubled(const ComplexMatrix& a);

// |Q| in closed block form: diag(U |A| U^H, |A|) with U the polar-type
// unitary of A. Agrees with matrix_abs(Q).
ComplexMatrix abs_doubled(const ComplexMatrix& a);

// (||(Phi (x) 1_2)(Q)||_q^q, 2 Tr |Phi(A)|^q); the pair agrees to roundoff.
std::pair<double, double> doubled_output_trace(const MapRef& phi,
                                               const ComplexMatrix& a,
                                               double q);

// (||(Phi (x) 1_2)(|Q|)||_q^q, Tr Phi(U|A|U^H)^q + Tr Phi(|A|)^q); also
// checks positivity of the extended output.
std::pair<double, double> doubled_abs_output_trace(const MapRef& phi,
                                                   const ComplexMatrix& a,
                                                   double q);

// ||Omega(|X|)||_q - ||Omega(X)||_q for Hermitian X; nonnegative (to
// roundoff) whenever Omega is completely positive.
double amosov_holevo_check(const MapRef& omega, const ComplexMatrix& x,
                           SchattenExponent q);

struct ChainTolerances {
  double relative = 1e-10;     // trace-identity agreement
  double elementwise = 1e-10;  // |Q| block-formula residual
  double margin = 1e-10;       // allowed slack on one-sided inequalities
  // slack for the norm-certificate step; callers wiring in a solver
  // estimate (not a certified bound) should widen this
  double final_margin = 1e-10;
};

// Residuals and margins for the four-step inequality chain tying
// 2 Tr|Phi(A)|^q to 2 ||Phi||_{p->q}^q. A is normalized to unit p-norm
// internally; the zero matrix is rejected.
struct ProofChainReport {
  double p = 0.0;
  double q = 0.0;

  double doubling_lhs = 0.0;  // ||(Phi(x)1_2)(Q)||_q^q
  double doubling_ref = 0.0;  // 2 Tr|Phi(A)|^q
  double doubling_rel_err = 0.0;
  bool doubling_pass = false;

  double abs_block_residual = 0.0;  // |Q| closed form vs matrix_abs(Q)
  bool abs_block_pass = false;

  double abs_trace_lhs = 0.0;  // ||(Phi(x)1_2)(|Q|)||_q^q
  double abs_trace_ref = 0.0;  // Tr Phi(U|A|U^H)^q + Tr Phi(|A|)^q
  double abs_trace_rel_err = 0.0;
  bool abs_trace_pass = false;

  double ah_margin = 0.0;  // AH lemma on (Phi (x) 1_2, Q)
  bool ah_pass = false;

  double final_margin = 0.0;  // min of norm_ref^q - Tr Phi(.)^q over both terms
  bool final_pass = false;

  bool all_pass() const {
    return doubling_pass && abs_block_pass && abs_trace_pass && ah_pass &&
           final_pass;
  }
};

ProofChainReport verify_proof_chain(const MapRef& phi, const ComplexMatrix& a,
                                    SchattenExponent p, double q,
                                    double norm_pq_ref,
                                    const ChainTolerances& tol = {});

}  // namespace cpnorm
