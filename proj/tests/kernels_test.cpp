// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpnorm/kernels.hpp"
#include "cpnorm/rng.hpp"
#include "test_support.hpp"

using cpnorm::Rng;
using cpnorm::kern::Backend;
using cpnorm::kern::cplx;
using cpnorm::kern::Kernels;

namespace {

std::vector<cplx> random_vec(Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = rng.normal_cplx();
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

struct BackendList {
  std::vector<const Kernels*> tables;
  BackendList() {
    tables.push_back(&cpnorm::kern::scalar_kernels());
    if (cpnorm::kern::backend_available(Backend::avx2)) {
      cpnorm::kern::force_backend(Backend::avx2);
      tables.push_back(&cpnorm::kern::active());
      cpnorm::kern::reset_backend();
    }
  }
};

const BackendList& backends() {
  static BackendList list;
  return list;
}

}  // namespace

TEST_CASE("gemm variants match a naive oracle on every backend") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 9;
    const std::size_t k = 1 + rng.next_u64() % 9;
    const std::size_t n = 1 + rng.next_u64() % 9;
    const cpnorm::ComplexMatrix a = cpnorm::random_matrix(rng, m, k);
    const cpnorm::ComplexMatrix b = cpnorm::random_matrix(rng, k, n);
    const cpnorm::ComplexMatrix bh = cpnorm::random_matrix(rng, n, k);
    const cpnorm::ComplexMatrix ah = cpnorm::random_matrix(rng, k, m);

    const cpnorm::ComplexMatrix want_nn = testsup::naive_mul(a, b);
    const cpnorm::ComplexMatrix want_cn = testsup::naive_mul(ah.adjoint(), b);
    const cpnorm::ComplexMatrix want_nc = testsup::naive_mul(a, bh.adjoint());

    for (const Kernels* kk : backends().tables) {
      CAPTURE(kk->name);
      cpnorm::ComplexMatrix c(m, n);
      kk->gemm_nn(m, k, n, a.data(), k, b.data(), n, c.data(), n, false);
      CHECK(cpnorm::max_abs_diff(c, want_nn) < 1e-12);
      // accumulate doubles the result
      kk->gemm_nn(m, k, n, a.data(), k, b.data(), n, c.data(), n, true);
      CHECK(cpnorm::max_abs_diff(c, want_nn + want_nn) < 1e-12);

      cpnorm::ComplexMatrix ccn(m, n);
      kk->gemm_cn(m, k, n, ah.data(), m, b.data(), n, ccn.data(), n, false);
      CHECK(cpnorm::max_abs_diff(ccn, want_cn) < 1e-12);

      cpnorm::ComplexMatrix cnc(m, n);
      kk->gemm_nc(m, k, n, a.data(), k, bh.data(), k, cnc.data(), n, false);
      CHECK(cpnorm::max_abs_diff(cnc, want_nc) < 1e-12);
    }
  }
}

TEST_CASE("vector kernels agree across backends") {
  if (backends().tables.size() < 2) return;  // single-backend host
  Rng rng(202);
  const Kernels& ref = *backends().tables[0];
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 33;
    const std::vector<cplx> x = random_vec(rng, n);
    const std::vector<cplx> y = random_vec(rng, n);
    const cplx alpha = rng.normal_cplx();

    for (std::size_t bi = 1; bi < backends().tables.size(); ++bi) {
      const Kernels& kk = *backends().tables[bi];
      CAPTURE(kk.name);

      std::vector<cplx> ya = y, yb = y;
      ref.axpy(n, alpha, x.data(), ya.data());
      kk.axpy(n, alpha, x.data(), yb.data());
      CHECK(max_diff(ya, yb) < 1e-13);

      std::vector<cplx> xa = x, xb = x;
      ref.scal(n, alpha, xa.data());
      kk.scal(n, alpha, xb.data());
      CHECK(max_diff(xa, xb) < 1e-13);

      const cplx da = ref.dotc(n, x.data(), y.data());
      const cplx db = kk.dotc(n, x.data(), y.data());
      CHECK(std::abs(da - db) < 1e-12 * (1.0 + std::abs(da)));

      CHECK(ref.sumsq(n, x.data()) ==
            doctest::Approx(kk.sumsq(n, x.data())).epsilon(1e-13));
      CHECK(ref.max_abs(n, x.data()) ==
            doctest::Approx(kk.max_abs(n, x.data())).epsilon(1e-13));

      const double c = std::cos(0.7);
      const cplx s = std::sin(0.7) * std::exp(cplx{0.0, 0.4});
      std::vector<cplx> x1 = x, y1 = y, x2 = x, y2 = y;
      ref.rot2(n, x1.data(), y1.data(), 1, c, s);
      kk.rot2(n, x2.data(), y2.data(), 1, c, s);
      CHECK(max_diff(x1, x2) < 1e-13);
      CHECK(max_diff(y1, y2) < 1e-13);
    }
  }
}

TEST_CASE("strided rot2 is a unitary plane rotation") {
  Rng rng(303);
  for (const Kernels* kk : backends().tables) {
    CAPTURE(kk->name);
    const std::size_t n = 5;
    const std::size_t stride = 3;
    std::vector<cplx> buf = random_vec(rng, n * stride + 1);
    std::vector<cplx> orig = buf;
    const double c = 0.6;
    const cplx s = 0.8 * std::exp(cplx{0.0, -1.1});
    kk->rot2(n, buf.data(), buf.data() + 1, stride, c, s);
    // norms of each (x_i, y_i) pair are preserved
    for (std::size_t i = 0; i < n; ++i) {
      const double before =
          std::norm(orig[i * stride]) + std::norm(orig[i * stride + 1]);
      const double after =
          std::norm(buf[i * stride]) + std::norm(buf[i * stride + 1]);
      CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
    // untouched elements stay put
    for (std::size_t i = 0; i < buf.size(); ++i) {
      if (i % stride == 0 || i % stride == 1) continue;
      CHECK(buf[i] == orig[i]);
    }
  }
}

TEST_CASE("backend forcing and reset round-trips") {
  cpnorm::kern::force_backend(Backend::scalar);
  CHECK(cpnorm::kern::active().name == "scalar");
  cpnorm::kern::reset_backend();
  if (cpnorm::kern::backend_available(Backend::avx2)) {
    cpnorm::kern::force_backend(Backend::avx2);
    CHECK(cpnorm::kern::active().name == "avx2");
    cpnorm::kern::reset_backend();
  } else {
    CHECK_THROWS_AS(cpnorm::kern::force_backend(Backend::avx2),
                    std::runtime_error);
  }
}
