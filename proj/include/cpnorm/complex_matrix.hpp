// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cpnorm {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Immutable in spirit: every operation
// returns a fresh value; nothing here shares storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;  // empty 0x0, useful only as a move-from target
  ComplexMatrix(std::size_t rows, std::size_t cols);

  // Row-major initializer, e.g. ComplexMatrix(2, 2, {a, b, c, d}).
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<cplx> entries);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t d);
  static ComplexMatrix diag(const std::vector<double>& values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_ && rows_ > 0; }

  cplx& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  cplx* data() { return entries_.data(); }
  const cplx* data() const { return entries_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix hermitian_part() const;  // (A + A^H) / 2

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx scalar);
ComplexMatrix operator-(ComplexMatrix a);

// Matrix products (kernel-backed).
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);     // A B
ComplexMatrix mul_cn(const ComplexMatrix& a, const ComplexMatrix& b);  // A^H B
ComplexMatrix mul_nc(const ComplexMatrix& a, const ComplexMatrix& b);  // A B^H
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermitian_deviation(const ComplexMatrix& m);  // max |M - M^H|

// Tensor and block assembly.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix block2x2(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22);

// Extract the (r, c) block of a matrix tiled into block_rows x block_cols
// sub-blocks of equal size.
ComplexMatrix block_of(const ComplexMatrix& m, std::size_t block_rows,
                       std::size_t block_cols, std::size_t r, std::size_t c);

}  // namespace cpnorm
