// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "cpnorm/eig.hpp"
#include "cpnorm/kernels.hpp"
#include "cpnorm/rng.hpp"

namespace cpnorm {

KrausMap::KrausMap(std::vector<ComplexMatrix> kraus_ops)
    : kraus_(std::move(kraus_ops)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("KrausMap: need at least one Kraus operator");
  }
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  if (d_out_ == 0 || d_in_ == 0) {
    throw std::invalid_argument("KrausMap: empty Kraus operator");
  }
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw std::invalid_argument("KrausMap: inconsistent Kraus dimensions");
    }
    if (!k.all_finite()) {
      throw std::invalid_argument("KrausMap: non-finite Kraus entries");
    }
  }
}

ComplexMatrix KrausMap::apply(const ComplexMatrix& a) const {
  if (a.rows() != d_in_ || a.cols() != d_in_) {
    throw std::invalid_argument("KrausMap::apply: input must be d_in x d_in");
  }
  const auto& kk = kern::active();
  ComplexMatrix out(d_out_, d_out_);
  ComplexMatrix tmp(d_out_, d_in_);
  for (const ComplexMatrix& k : kraus_) {
    kk.gemm_nn(d_out_, d_in_, d_in_, k.data(), d_in_, a.data(), d_in_,
               tmp.data(), d_in_, false);
    kk.gemm_nc(d_out_, d_in_, d_out_, tmp.data(), d_in_, k.data(), d_in_,
               out.data(), d_out_, true);
  }
  return out;
}

ComplexMatrix KrausMap::adjoint_apply(const ComplexMatrix& b) const {
  if (b.rows() != d_out_ || b.cols() != d_out_) {
    throw std::invalid_argument(
        "KrausMap::adjoint_apply: input must be d_out x d_out");
  }
  const auto& kk = kern::active();
  ComplexMatrix out(d_in_, d_in_);
  ComplexMatrix tmp(d_in_, d_out_);
  for (const ComplexMatrix& k : kraus_) {
    kk.gemm_cn(d_in_, d_out_, d_out_, k.data(), d_in_, b.data(), d_out_,
               tmp.data(), d_out_, false);
    kk.gemm_nn(d_in_, d_out_, d_in_, tmp.data(), d_out_, k.data(), d_in_,
               out.data(), d_in_, true);
  }
  return out;
}

MatrixUnitMap::MatrixUnitMap(std::size_t d_in, std::size_t d_out,
                             std::vector<ComplexMatrix> unit_images)
    : d_in_(d_in), d_out_(d_out), images_(std::move(unit_images)) {
  if (d_in_ == 0 || d_out_ == 0 || images_.size() != d_in_ * d_in_) {
    throw std::invalid_argument("MatrixUnitMap: need d_in^2 unit images");
  }
  for (const ComplexMatrix& m : images_) {
    if (m.rows() != d_out_ || m.cols() != d_out_) {
      throw std::invalid_argument("MatrixUnitMap: image dimension mismatch");
    }
  }
}

MatrixUnitMap MatrixUnitMap::transpose_map(std::size_t d) {
  std::vector<ComplexMatrix> images;
  images.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix m(d, d);
      m(j, i) = 1.0;  // transpose of E_ij
      images.push_back(std::move(m));
    }
  }
  return MatrixUnitMap(d, d, std::move(images));
}

MatrixUnitMap MatrixUnitMap::from_kraus(const KrausMap& k) {
  const std::size_t d = k.d_in();
  std::vector<ComplexMatrix> images;
  images.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix e(d, d);
      e(i, j) = 1.0;
      images.push_back(k.apply(e));
    }
  }
  return MatrixUnitMap(d, k.d_out(), std::move(images));
}

ComplexMatrix MatrixUnitMap::apply(const ComplexMatrix& a) const {
  if (a.rows() != d_in_ || a.cols() != d_in_) {
    throw std::invalid_argument(
        "MatrixUnitMap::apply: input must be d_in x d_in");
  }
  const auto& kk = kern::active();
  ComplexMatrix out(d_out_, d_out_);
  for (std::size_t i = 0; i < d_in_; ++i) {
    for (std::size_t j = 0; j < d_in_; ++j) {
      const cplx w = a(i, j);
      if (w == cplx{0.0, 0.0}) continue;
      kk.axpy(out.size(), w, images_[i * d_in_ + j].data(), out.data());
    }
  }
  return out;
}

ComplexMatrix MatrixUnitMap::adjoint_apply(const ComplexMatrix& b) const {
  if (b.rows() != d_out_ || b.cols() != d_out_) {
    throw std::invalid_argument(
        "MatrixUnitMap::adjoint_apply: input must be d_out x d_out");
  }
  const auto& kk = kern::active();
  // <Phi^+(B), E_ij> = <B, Phi(E_ij)> in the Hilbert-Schmidt inner product
  ComplexMatrix out(d_in_, d_in_);
  for (std::size_t i = 0; i < d_in_; ++i) {
    for (std::size_t j = 0; j < d_in_; ++j) {
      out(i, j) = kk.dotc(b.size(), images_[i * d_in_ + j].data(), b.data());
    }
  }
  return out;
}

MapRef::MapRef(const KrausMap& k) : kraus_(&k) {}
MapRef::MapRef(const MatrixUnitMap& m) : units_(&m) {}

std::size_t MapRef::d_in() const {
  return kraus_ ? kraus_->d_in() : units_->d_in();
}
std::size_t MapRef::d_out() const {
  return kraus_ ? kraus_->d_out() : units_->d_out();
}
ComplexMatrix MapRef::apply(const ComplexMatrix& a) const {
  return kraus_ ? kraus_->apply(a) : units_->apply(a);
}
ComplexMatrix MapRef::adjoint_apply(const ComplexMatrix& b) const {
  return kraus_ ? kraus_->adjoint_apply(b) : units_->adjoint_apply(b);
}
ComplexMatrix MapRef::choi() const {
  return kraus_ ? cpnorm::choi(*kraus_) : cpnorm::choi(*units_);
}

ComplexMatrix choi(const KrausMap& k) {
  // Choi[(a,i),(b,j)] = sum_k K_k(a,i) conj(K_k(b,j)): a rank-one sum over
  // the row-major flattenings of the Kraus operators.
  const std::size_t n = k.d_out() * k.d_in();
  ComplexMatrix out(n, n);
  const auto& kk = kern::active();
  ComplexMatrix flat(n, 1);
  for (const ComplexMatrix& op : k.kraus()) {
    // row-major flatten with index (a*d_in + i) matches the kron layout
    // Phi(E_ij) (x) E_ij used below for unit-image maps
    for (std::size_t a = 0; a < k.d_out(); ++a) {
      for (std::size_t i = 0; i < k.d_in(); ++i) {
        flat(a * k.d_in() + i, 0) = op(a, i);
      }
    }
    kk.gemm_nc(n, 1, n, flat.data(), 1, flat.data(), 1, out.data(), n, true);
  }
  return out;
}

ComplexMatrix choi(const MatrixUnitMap& m) {
  const std::size_t n = m.d_out() * m.d_in();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < m.d_in(); ++i) {
    for (std::size_t j = 0; j < m.d_in(); ++j) {
      const ComplexMatrix& img = m.unit_image(i, j);
      for (std::size_t a = 0; a < m.d_out(); ++a) {
        for (std::size_t b = 0; b < m.d_out(); ++b) {
          out(a * m.d_in() + i, b * m.d_in() + j) = img(a, b);
        }
      }
    }
  }
  return out;
}

namespace {

CpCertificate certify(const ComplexMatrix& choi_matrix) {
  const HermitianEigen eig = hermitian_eig(choi_matrix.hermitian_part());
  const double min_eig = eig.eigenvalues.back();
  return CpCertificate{min_eig >= -kPsdClipTol, min_eig};
}

}  // namespace

CpCertificate is_completely_positive(const KrausMap& k) {
  return certify(choi(k));
}

CpCertificate is_completely_positive(const MatrixUnitMap& m) {
  return certify(choi(m));
}

CpCertificate is_completely_positive(const MapRef& m) {
  return certify(m.choi());
}

KrausMap extend_identity2(const KrausMap& k) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> ops;
  ops.reserve(k.kraus().size());
  for (const ComplexMatrix& op : k.kraus()) ops.push_back(kron(i2, op));
  return KrausMap(std::move(ops));
}

MatrixUnitMap extend_identity2(const MatrixUnitMap& m) {
  const std::size_t d = m.d_in();
  const std::size_t dd = 2 * d;
  std::vector<ComplexMatrix> images(dd * dd,
                                    ComplexMatrix(2 * m.d_out(), 2 * m.d_out()));
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t bp = 0; bp < 2; ++bp) {
      ComplexMatrix ebb(2, 2);
      ebb(b, bp) = 1.0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          images[(b * d + i) * dd + (bp * d + j)] =
              kron(ebb, m.unit_image(i, j));
        }
      }
    }
  }
  return MatrixUnitMap(dd, 2 * m.d_out(), std::move(images));
}

ComplexMatrix apply_extended2(const MapRef& phi, const ComplexMatrix& x) {
  const std::size_t dd = 2 * phi.d_in();
  if (x.rows() != dd || x.cols() != dd) {
    throw std::invalid_argument("apply_extended2: input must be 2*d_in square");
  }
  return block2x2(phi.apply(block_of(x, 2, 2, 0, 0)),
                  phi.apply(block_of(x, 2, 2, 0, 1)),
                  phi.apply(block_of(x, 2, 2, 1, 0)),
                  phi.apply(block_of(x, 2, 2, 1, 1)));
}

KrausMap make_identity_channel(std::size_t d) {
  if (d == 0) throw std::invalid_argument("identity channel: d must be >= 1");
  return KrausMap({ComplexMatrix::identity(d)});
}

KrausMap make_depolarizing(std::size_t d, double lambda) {
  if (d == 0) throw std::invalid_argument("depolarizing: d must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("depolarizing: lambda must be in [0, 1]");
  }
  // (1-lambda) rho + lambda Tr(rho) I/d = sum of sqrt(1-lambda) I and
  // sqrt(lambda/d) E_ij over all matrix units
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - lambda) * ComplexMatrix::identity(d));
  const double w = std::sqrt(lambda / static_cast<double>(d));
  if (lambda > 0.0) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        ComplexMatrix e(d, d);
        e(i, j) = w;
        ops.push_back(std::move(e));
      }
    }
  }
  return KrausMap(std::move(ops));
}

KrausMap make_amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("amplitude damping: gamma must be in [0, 1]");
  }
  ComplexMatrix k0(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)});
  ComplexMatrix k1(2, 2, {0.0, std::sqrt(gamma), 0.0, 0.0});
  return KrausMap({std::move(k0), std::move(k1)});
}

namespace {

// Columns of a Gaussian (d_out*rank) x d_in matrix, orthonormalized, sliced
// into rank blocks of d_out rows: sum K_i^H K_i = I by construction.
std::vector<ComplexMatrix> stinespring_slices(std::size_t d_in,
                                              std::size_t d_out,
                                              std::size_t rank,
                                              std::uint64_t seed) {
  if (d_in == 0 || d_out == 0 || rank == 0) {
    throw std::invalid_argument("random channel: dimensions must be >= 1");
  }
  if (d_out * rank < d_in) {
    throw std::invalid_argument(
        "random channel: need d_out * kraus_rank >= d_in for an isometry");
  }
  Rng rng(seed);
  ComplexMatrix g = random_matrix(rng, d_out * rank, d_in);
  const auto& kk = kern::active();
  const std::size_t rows = g.rows();
  std::vector<cplx> col(rows), prev(rows);
  for (std::size_t c = 0; c < d_in; ++c) {
    for (std::size_t r = 0; r < rows; ++r) col[r] = g(r, c);
    for (std::size_t pc = 0; pc < c; ++pc) {
      for (std::size_t r = 0; r < rows; ++r) prev[r] = g(r, pc);
      const cplx proj = kk.dotc(rows, prev.data(), col.data());
      kk.axpy(rows, -proj, prev.data(), col.data());
    }
    const double nrm = std::sqrt(kk.sumsq(rows, col.data()));
    if (nrm < 1e-8) {
      throw std::runtime_error("random channel: degenerate Gaussian draw");
    }
    kk.scal(rows, cplx{1.0 / nrm, 0.0}, col.data());
    for (std::size_t r = 0; r < rows; ++r) g(r, c) = col[r];
  }
  std::vector<ComplexMatrix> ops(rank, ComplexMatrix(d_out, d_in));
  for (std::size_t s = 0; s < rank; ++s) {
    for (std::size_t r = 0; r < d_out; ++r) {
      for (std::size_t c = 0; c < d_in; ++c) {
        ops[s](r, c) = g(s * d_out + r, c);
      }
    }
  }
  return ops;
}

}  // namespace

KrausMap make_random_stinespring(std::size_t d_in, std::size_t d_out,
                                 std::size_t kraus_rank, std::uint64_t seed) {
  return KrausMap(stinespring_slices(d_in, d_out, kraus_rank, seed));
}

KrausMap make_random_cp(std::size_t d_in, std::size_t d_out,
                        std::size_t kraus_rank, std::uint64_t seed,
                        bool trace_preserving) {
  std::vector<ComplexMatrix> ops =
      stinespring_slices(d_in, d_out, kraus_rank, seed);
  if (!trace_preserving) {
    Rng rng(derive_seed(seed, 0x5ca1eULL, 0));
    for (ComplexMatrix& op : ops) {
      op *= cplx{std::exp(rng.uniform01() - 0.5), 0.0};
    }
  }
  return KrausMap(std::move(ops));
}

std::string family_name(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::identity: return "identity";
    case ChannelFamily::depolarizing: return "depolarizing";
    case ChannelFamily::amplitude_damping: return "amplitude_damping";
    case ChannelFamily::random_stinespring: return "random_stinespring";
    case ChannelFamily::transpose: return "transpose";
    case ChannelFamily::explicit_kraus: return "explicit";
  }
  return "unknown";
}

MapRef RealizedChannel::ref() const {
  if (!kraus_map.empty()) return MapRef(kraus_map.front());
  return MapRef(unit_map.front());
}

RealizedChannel make_channel(const ChannelSpec& spec) {
  RealizedChannel out;
  out.spec = spec;
  const auto param = [&spec](const std::string& key, double fallback,
                             bool required) {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) {
      if (required) {
        throw std::invalid_argument("channel spec: missing parameter '" + key +
                                    "'");
      }
      return fallback;
    }
    return it->second;
  };
  switch (spec.family) {
    case ChannelFamily::identity: {
      const std::size_t d = spec.d_in ? spec.d_in : 2;
      out.kraus_map.push_back(make_identity_channel(d));
      break;
    }
    case ChannelFamily::depolarizing: {
      const std::size_t d = spec.d_in ? spec.d_in : 2;
      out.kraus_map.push_back(
          make_depolarizing(d, param("lambda", 0.0, true)));
      break;
    }
    case ChannelFamily::amplitude_damping: {
      out.kraus_map.push_back(
          make_amplitude_damping(param("gamma", 0.0, true)));
      break;
    }
    case ChannelFamily::random_stinespring: {
      const std::size_t d_in = spec.d_in ? spec.d_in : 2;
      const std::size_t d_out = spec.d_out ? spec.d_out : d_in;
      const auto rank =
          static_cast<std::size_t>(param("kraus_rank", 1.0, false));
      const auto seed = static_cast<std::uint64_t>(param("seed", 1.0, false));
      const bool tp = param("trace_preserving", 1.0, false) != 0.0;
      out.kraus_map.push_back(make_random_cp(d_in, d_out, rank, seed, tp));
      break;
    }
    case ChannelFamily::transpose: {
      const std::size_t d = spec.d_in ? spec.d_in : 2;
      out.unit_map.push_back(MatrixUnitMap::transpose_map(d));
      break;
    }
    case ChannelFamily::explicit_kraus: {
      if (spec.kraus.empty()) {
        throw std::invalid_argument("channel spec: explicit family needs kraus");
      }
      out.kraus_map.push_back(KrausMap(spec.kraus));
      break;
    }
  }
  if (!out.kraus_map.empty()) {
    out.spec.d_in = out.kraus_map.front().d_in();
    out.spec.d_out = out.kraus_map.front().d_out();
  } else {
    out.spec.d_in = out.unit_map.front().d_in();
    out.spec.d_out = out.unit_map.front().d_out();
  }
  return out;
}

}  // namespace cpnorm
