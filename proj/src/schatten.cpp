// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/schatten.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cpnorm/eig.hpp"
#include "cpnorm/svd.hpp"

namespace cpnorm {

SchattenExponent::SchattenExponent(double q) : q_(q) {
  if (std::isnan(q) || q < 1.0) {
    throw std::invalid_argument("SchattenExponent: q must be >= 1");
  }
}

std::string SchattenExponent::str() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", q_);
  return buf;
}

SchattenExponent SchattenExponent::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return SchattenExponent::infinity();
  }
  std::size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("SchattenExponent: cannot parse '" + text +
                                "'");
  }
  if (used != text.size()) {
    throw std::invalid_argument("SchattenExponent: cannot parse '" + text +
                                "'");
  }
  return SchattenExponent(q);
}

double schatten_norm(const ComplexMatrix& a, SchattenExponent q) {
  if (!a.is_square()) {
    throw std::invalid_argument("schatten_norm: matrix must be square");
  }
  const Svd s = svd(a);
  const double sigma_max = s.singular_values.front();
  if (sigma_max == 0.0) return 0.0;
  if (q.is_infinite()) return sigma_max;
  // factor out sigma_max so large q stays in range
  const double tau = kRankTolScale * sigma_max;
  double acc = 0.0;
  for (double sigma : s.singular_values) {
    if (sigma <= tau) continue;
    acc += std::pow(sigma / sigma_max, q.value());
  }
  return sigma_max * std::pow(acc, 1.0 / q.value());
}

double trace_power(const ComplexMatrix& x, double q) {
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("trace_power: q must be finite and >= 1");
  }
  const HermitianEigen eig = hermitian_eig(x);
  const std::vector<double> lam = psd_eigenvalues(eig);
  double acc = 0.0;
  for (double l : lam) acc += std::pow(l, q);
  return acc;
}

}  // namespace cpnorm
