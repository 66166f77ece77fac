// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

#include "cpnorm/complex_matrix.hpp"

namespace cpnorm {

// Norm exponent q in [1, inf]. Infinity is a first-class value (the max
// singular value), not a large-q stand-in.
class SchattenExponent {
 public:
  explicit SchattenExponent(double q);

  static SchattenExponent infinity() {
    return SchattenExponent(std::numeric_limits<double>::infinity());
  }

  double value() const { return q_; }
  bool is_infinite() const { return std::isinf(q_); }

  std::string str() const;
  static SchattenExponent parse(const std::string& text);  // "2", "1.5", "inf"

 private:
  double q_;
};

// (sum_i sigma_i^q)^{1/q} over the singular values of A; the max singular
// value for q = inf. Exactly 0 for the zero matrix. Singular values below
// the rank cutoff are dropped from the sum.
double schatten_norm(const ComplexMatrix& a, SchattenExponent q);

// sum_i lambda_i^q for Hermitian PSD X (clip tolerance applies); equals
// schatten_norm(X, q)^q on PSD inputs. Finite q only.
double trace_power(const ComplexMatrix& x, double q);

}  // namespace cpnorm
