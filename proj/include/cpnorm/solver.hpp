// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "cpnorm/channel.hpp"
#include "cpnorm/complex_matrix.hpp"
#include "cpnorm/schatten.hpp"

namespace cpnorm {

enum class InputClass { hermitian, general, positive_trace_one };

std::string input_class_name(InputClass c);
InputClass parse_input_class(const std::string& text);

struct SolverOptions {
  int restarts = 20;
  int max_iterations = 500;
  double step_init = 0.1;
  double tol_grad = 1e-9;
  double tol_value = 1e-11;
  double epsilon_smooth = 1e-12;
  std::uint64_t seed = 0;
  // admit maps whose Choi matrix fails the PSD certificate (negative
  // controls); off by default so the theorem's hypothesis stays explicit
  bool allow_non_cp = false;

  void validate() const;
};

struct NormEstimate {
  double value = 0.0;
  ComplexMatrix maximizer;
  InputClass input_class = InputClass::hermitian;
  int restarts_used = 0;
  int best_restart = 0;  // 0-based index of the winning restart
  int iterations = 0;    // iterations spent by the winning restart
  bool converged = false;
  double grad_norm_final = 0.0;
  double cp_margin = 0.0;  // min Choi eigenvalue of the map
};

// max ||Phi(A)||_q / ||A||_p over the given input class by multi-start
// projected gradient ascent with a backtracking (halving) line search.
// Infinite exponents run on a finite surrogate (64) and are re-evaluated
// exactly at the maximizer found. The map must certify completely positive
// unless opts.allow_non_cp is set.
NormEstimate norm_pq(const MapRef& phi, SchattenExponent p,
                     SchattenExponent q, InputClass input_class,
                     const SolverOptions& opts = {});

// Euclidean gradient of Tr|Phi(A)|^q with respect to the real and imaginary
// parts of A. Hermitian classes use the eigendecomposition of Phi(A), the
// general class its SVD; eigen/singular values are smoothed by
// sqrt(s^2 + eps^2) inside the gradient only.
ComplexMatrix objective_gradient(const MapRef& phi, const ComplexMatrix& a,
                                 double q, InputClass input_class,
                                 double epsilon_smooth = 1e-12);

// Map an arbitrary nonzero matrix into the class: Hermitian part and/or
// p-norm scaling, or (positive_trace_one) eigenvalue clipping at zero plus
// trace normalization.
ComplexMatrix project_to_class(const ComplexMatrix& a, SchattenExponent p,
                               InputClass input_class);

// Sampling oracle: best objective value over random unit-norm inputs of the
// class, optionally polished by coordinate-wise local refinement. A lower
// bound on the true norm; d_in <= 3 only.
double brute_force_norm(const MapRef& phi, SchattenExponent p,
                        SchattenExponent q, InputClass input_class,
                        std::size_t samples, bool refine, std::uint64_t seed);

}  // namespace cpnorm
