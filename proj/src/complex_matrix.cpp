// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "cpnorm/kernels.hpp"

namespace cpnorm {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
  require(rows >= 1 && cols >= 1, "ComplexMatrix: dimensions must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols) {
  require(entries.size() == rows * cols,
          "ComplexMatrix: initializer size mismatch");
  std::size_t i = 0;
  for (const cplx& v : entries) entries_[i++] = v;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& values) {
  require(!values.empty(), "diag: empty value list");
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = std::conj(entries_[i]);
  }
  return out;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  require(is_square(), "hermitian_part: matrix must be square");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    }
  }
  return out;
}

cplx ComplexMatrix::trace() const {
  require(is_square(), "trace: matrix must be square");
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  return std::sqrt(kern::active().sumsq(entries_.size(), entries_.data()));
}

double ComplexMatrix::max_abs() const {
  return kern::active().max_abs(entries_.size(), entries_.data());
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& v : entries_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_,
          "operator+=: dimension mismatch");
  kern::active().axpy(entries_.size(), cplx{1.0, 0.0}, other.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_,
          "operator-=: dimension mismatch");
  kern::active().axpy(entries_.size(), cplx{-1.0, 0.0}, other.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  kern::active().scal(entries_.size(), scalar, data());
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix a) {
  a *= scalar;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, cplx scalar) {
  a *= scalar;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a) {
  a *= cplx{-1.0, 0.0};
  return a;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: dim mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  kern::active().gemm_nn(a.rows(), a.cols(), b.cols(), a.data(), a.cols(),
                         b.data(), b.cols(), c.data(), c.cols(), false);
  return c;
}

ComplexMatrix mul_cn(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("mul_cn: dim mismatch");
  }
  ComplexMatrix c(a.cols(), b.cols());
  kern::active().gemm_cn(a.cols(), a.rows(), b.cols(), a.data(), a.cols(),
                         b.data(), b.cols(), c.data(), c.cols(), false);
  return c;
}

ComplexMatrix mul_nc(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("mul_nc: dim mismatch");
  }
  ComplexMatrix c(a.rows(), b.rows());
  kern::active().gemm_nc(a.rows(), a.cols(), b.rows(), a.data(), a.cols(),
                         b.data(), b.cols(), c.data(), c.cols(), false);
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mul(a, b);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  ComplexMatrix d = a;
  d -= b;
  return d.max_abs();
}

double hermitian_deviation(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw std::invalid_argument("hermitian_deviation: matrix must be square");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx av = a(i, j);
      if (av == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out(a.rows() + i, a.cols() + j) = b(i, j);
    }
  }
  return out;
}

ComplexMatrix block2x2(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22) {
  const std::size_t r0 = a11.rows(), r1 = a21.rows();
  const std::size_t c0 = a11.cols(), c1 = a12.cols();
  if (a12.rows() != r0 || a22.rows() != r1 || a21.cols() != c0 ||
      a22.cols() != c1) {
    throw std::invalid_argument("block2x2: inconsistent block dimensions");
  }
  ComplexMatrix out(r0 + r1, c0 + c1);
  for (std::size_t i = 0; i < r0; ++i) {
    for (std::size_t j = 0; j < c0; ++j) out(i, j) = a11(i, j);
    for (std::size_t j = 0; j < c1; ++j) out(i, c0 + j) = a12(i, j);
  }
  for (std::size_t i = 0; i < r1; ++i) {
    for (std::size_t j = 0; j < c0; ++j) out(r0 + i, j) = a21(i, j);
    for (std::size_t j = 0; j < c1; ++j) out(r0 + i, c0 + j) = a22(i, j);
  }
  return out;
}

ComplexMatrix block_of(const ComplexMatrix& m, std::size_t block_rows,
                       std::size_t block_cols, std::size_t r, std::size_t c) {
  if (block_rows == 0 || block_cols == 0 || m.rows() % block_rows != 0 ||
      m.cols() % block_cols != 0 || r >= block_rows || c >= block_cols) {
    throw std::invalid_argument("block_of: bad block geometry");
  }
  const std::size_t br = m.rows() / block_rows;
  const std::size_t bc = m.cols() / block_cols;
  ComplexMatrix out(br, bc);
  for (std::size_t i = 0; i < br; ++i) {
    for (std::size_t j = 0; j < bc; ++j) {
      out(i, j) = m(r * br + i, c * bc + j);
    }
  }
  return out;
}

}  // namespace cpnorm
