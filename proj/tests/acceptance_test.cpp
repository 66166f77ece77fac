// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line with its
// observed worst-case statistics; the process exits nonzero if any fail.
//
//  1. Hermitian/general norm equality over >= 50 random CP maps and the
//     full (p, q) grid at solver defaults, relative gap <= 1e-6.
//  2. Doubled-operator trace identities and the |Q| block formula over
//     >= 200 random (channel, input, q) triples at 1e-10.
//  3. The Amosov-Holevo margin over >= 1000 random triples at -1e-10, with
//     equality cases pinned to |margin| <= 1e-10.
//  4. Closed forms: identity-channel norms and the depolarizing purity
//     curve at 1e-6.
//  5. Analytic gradients against central finite differences (h = 1e-6) on
//     >= 100 smooth instances at 1e-5 relative.
//  6. Solver values dominate the 1e5-sample brute-force oracle minus 1e-4
//     on every suite instance (all have d_in <= 3).
//  7. The transpose map is flagged non-CP (min Choi eigenvalue <= -0.99)
//     and the CLI refuses it without --allow-non-cp.
//  8. `verify` reruns with one seed are byte-identical except timestamps.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpnorm/channel.hpp"
#include "cpnorm/doubling.hpp"
#include "cpnorm/eig.hpp"
#include "cpnorm/kernels.hpp"
#include "cpnorm/parallel.hpp"
#include "cpnorm/rng.hpp"
#include "cpnorm/schatten.hpp"
#include "cpnorm/solver.hpp"
#include "cpnorm/svd.hpp"

#ifndef CPNORM_CLI_PATH
#error "CPNORM_CLI_PATH must be defined by the build"
#endif

namespace {

using cpnorm::ComplexMatrix;
using cpnorm::cplx;
using cpnorm::InputClass;
using cpnorm::KrausMap;
using cpnorm::Rng;
using cpnorm::SchattenExponent;

constexpr std::uint64_t kMasterSeed = 190845;
constexpr unsigned kJobs = 4;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, format);
  std::vsnprintf(buf, sizeof(buf), format, ap);
  va_end(ap);
  return buf;
}

struct SuiteChannel {
  KrausMap map;
  std::size_t d_in;
};

std::vector<SuiteChannel> make_suite_channels(std::size_t count) {
  std::vector<SuiteChannel> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    Rng rng(cpnorm::derive_seed(kMasterSeed, 7, c));
    const std::size_t d_in = 2 + rng.next_u64() % 2;
    const std::size_t d_out = 2 + rng.next_u64() % 2;
    const std::size_t rank_min = (d_in + d_out - 1) / d_out;
    const std::size_t rank_max = d_in * d_out;
    const std::size_t rank =
        rank_min + rng.next_u64() % (rank_max - rank_min + 1);
    const bool tp = rng.next_u64() % 2 == 0;
    out.push_back(SuiteChannel{
        cpnorm::make_random_cp(d_in, d_out, rank,
                               cpnorm::derive_seed(kMasterSeed, 8, c), tp),
        d_in});
  }
  return out;
}

const double kGrid[] = {1.0, 1.5, 2.0, 3.0};

struct SolveCell {
  double hermitian = 0.0;
  double general = 0.0;
  double gap = 0.0;
};

// criterion 1 (and the solves reused by criterion 6)
std::vector<SolveCell> criterion1(const std::vector<SuiteChannel>& channels) {
  const std::size_t n = channels.size() * 16;
  std::vector<SolveCell> cells(n);
  cpnorm::parallel_for(n, kJobs, [&](std::size_t idx) {
    const SuiteChannel& ch = channels[idx / 16];
    const std::size_t cell = idx % 16;
    const SchattenExponent p(kGrid[cell / 4]);
    const SchattenExponent q(kGrid[cell % 4]);
    cpnorm::SolverOptions opts;  // defaults: 20 restarts
    opts.seed = cpnorm::derive_seed(kMasterSeed, 11, idx);
    const cpnorm::NormEstimate h =
        cpnorm::norm_pq(ch.map, p, q, InputClass::hermitian, opts);
    opts.seed = cpnorm::derive_seed(kMasterSeed, 12, idx);
    const cpnorm::NormEstimate g =
        cpnorm::norm_pq(ch.map, p, q, InputClass::general, opts);
    cells[idx] = SolveCell{h.value, g.value,
                           std::abs(g.value - h.value) / (1.0 + h.value)};
  });
  double worst = 0.0;
  for (const SolveCell& c : cells) worst = std::max(worst, c.gap);
  report(1, worst <= 1e-6,
         fmt("norm equality over %zu channels x 16 (p,q): max relative gap "
             "%.3e (tol 1e-6)",
             channels.size(), worst));
  return cells;
}

void criterion2() {
  const int trials = 200;
  std::vector<double> worst_identity(trials), worst_block(trials);
  cpnorm::parallel_for(trials, kJobs, [&](std::size_t t) {
    Rng rng(cpnorm::derive_seed(kMasterSeed, 21, t));
    const std::size_t d_in = 2 + rng.next_u64() % 2;
    const std::size_t d_out = 2 + rng.next_u64() % 2;
    const std::size_t rank_min = (d_in + d_out - 1) / d_out;
    const std::size_t rank =
        rank_min + rng.next_u64() % (d_in * d_out - rank_min + 1);
    const KrausMap phi = cpnorm::make_random_cp(
        d_in, d_out, rank, cpnorm::derive_seed(kMasterSeed, 22, t),
        rng.next_u64() % 2 == 0);
    const ComplexMatrix a = cpnorm::random_matrix(rng, d_in, d_in);
    const double q = kGrid[t % 4];

    const auto [lhs, ref] = cpnorm::doubled_output_trace(phi, a, q);
    const auto [alhs, aref] = cpnorm::doubled_abs_output_trace(phi, a, q);
    const double rel1 =
        std::abs(lhs - ref) / (1.0 + std::max(std::abs(lhs), std::abs(ref)));
    const double rel2 = std::abs(alhs - aref) /
                        (1.0 + std::max(std::abs(alhs), std::abs(aref)));
    worst_identity[t] = std::max(rel1, rel2);
    worst_block[t] = cpnorm::max_abs_diff(
        cpnorm::abs_doubled(a),
        cpnorm::matrix_abs(cpnorm::build_doubled(a).assembled));
  });
  double wi = 0.0, wb = 0.0;
  for (int t = 0; t < trials; ++t) {
    wi = std::max(wi, worst_identity[t]);
    wb = std::max(wb, worst_block[t]);
  }
  report(2, wi <= 1e-10 && wb <= 1e-10,
         fmt("proof-chain identities over %d triples: max identity rel err "
             "%.3e, max |Q| block residual %.3e (tol 1e-10)",
             trials, wi, wb));
}

void criterion3() {
  const int trials = 1000;
  std::vector<double> margins(trials);
  cpnorm::parallel_for(trials, kJobs, [&](std::size_t t) {
    Rng rng(cpnorm::derive_seed(kMasterSeed, 31, t));
    const std::size_t d_in = 2 + rng.next_u64() % 2;
    const std::size_t d_out = 2 + rng.next_u64() % 2;
    const std::size_t rank_min = (d_in + d_out - 1) / d_out;
    const std::size_t rank =
        rank_min + rng.next_u64() % (d_in * d_out - rank_min + 1);
    const KrausMap omega = cpnorm::make_random_cp(
        d_in, d_out, rank, cpnorm::derive_seed(kMasterSeed, 32, t),
        rng.next_u64() % 2 == 0);
    const ComplexMatrix x = cpnorm::random_hermitian(rng, d_in);
    const double q = 1.0 + 0.5 * (t % 5);
    margins[t] =
        cpnorm::amosov_holevo_check(omega, x, SchattenExponent(q));
  });
  double min_margin = 0.0;
  for (double m : margins) min_margin = std::min(min_margin, m);

  // equality cases: PSD input, identity channel
  Rng rng(cpnorm::derive_seed(kMasterSeed, 33, 0));
  double worst_eq = 0.0;
  for (int t = 0; t < 50; ++t) {
    const KrausMap omega = cpnorm::make_random_cp(
        3, 2, 3, cpnorm::derive_seed(kMasterSeed, 34, t), t % 2 == 0);
    ComplexMatrix g = cpnorm::random_matrix(rng, 3, 3);
    const ComplexMatrix psd = cpnorm::mul_cn(g, g).hermitian_part();
    worst_eq = std::max(worst_eq,
                        std::abs(cpnorm::amosov_holevo_check(
                            omega, psd, SchattenExponent(2.0))));
    const KrausMap id = cpnorm::make_identity_channel(3);
    const ComplexMatrix x = cpnorm::random_hermitian(rng, 3);
    worst_eq = std::max(worst_eq,
                        std::abs(cpnorm::amosov_holevo_check(
                            id, x, SchattenExponent(1.0 + (t % 3)))));
  }
  report(3, min_margin >= -1e-10 && worst_eq <= 1e-10,
         fmt("AH margins over %d triples: min %.3e (tol -1e-10); equality "
             "cases |margin| max %.3e (tol 1e-10)",
             trials, min_margin, worst_eq));
}

void criterion4() {
  double worst_id = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const KrausMap id = cpnorm::make_identity_channel(d);
    std::vector<double> errs(16 * 2);
    cpnorm::parallel_for(16, kJobs, [&](std::size_t cell) {
      const double p = kGrid[cell / 4];
      const double q = kGrid[cell % 4];
      const double want =
          p <= q ? 1.0 : std::pow(double(d), 1.0 / q - 1.0 / p);
      int slot = 0;
      for (InputClass cls : {InputClass::hermitian, InputClass::general}) {
        cpnorm::SolverOptions opts;
        opts.seed = cpnorm::derive_seed(kMasterSeed, 41 + slot, d * 16 + cell);
        const cpnorm::NormEstimate est = cpnorm::norm_pq(
            id, SchattenExponent(p), SchattenExponent(q), cls, opts);
        errs[cell * 2 + slot] = std::abs(est.value - want);
        ++slot;
      }
    });
    for (double e : errs) worst_id = std::max(worst_id, e);
  }

  double worst_dep = 0.0;
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    const KrausMap dep = cpnorm::make_depolarizing(2, lambda);
    cpnorm::SolverOptions opts;
    opts.seed = cpnorm::derive_seed(kMasterSeed, 43,
                                    static_cast<std::uint64_t>(lambda * 100));
    const cpnorm::NormEstimate nu =
        cpnorm::norm_pq(dep, SchattenExponent(1.0), SchattenExponent(2.0),
                        InputClass::positive_trace_one, opts);
    const double want = std::sqrt((1.0 - lambda / 2.0) * (1.0 - lambda / 2.0) +
                                  (lambda / 2.0) * (lambda / 2.0));
    worst_dep = std::max(worst_dep, std::abs(nu.value - want));
  }
  report(4, worst_id <= 1e-6 && worst_dep <= 1e-6,
         fmt("closed forms: identity-channel norm error max %.3e, "
             "depolarizing purity error max %.3e (tol 1e-6)",
             worst_id, worst_dep));
}

void criterion5() {
  const double h = 1e-6;
  int done = 0, attempts = 0;
  double worst = 0.0;
  Rng rng(cpnorm::derive_seed(kMasterSeed, 51, 0));
  while (done < 100 && attempts < 2000) {
    ++attempts;
    const std::size_t d = 2 + attempts % 2;
    const KrausMap phi = cpnorm::make_random_cp(
        d, d, 2 + attempts % 2, cpnorm::derive_seed(kMasterSeed, 52, attempts),
        attempts % 2 == 0);
    const double q =
        attempts % 3 == 0 ? 1.5 : (attempts % 3 == 1 ? 2.0 : 3.0);
    const bool herm = attempts % 2 == 0;
    const InputClass cls = herm ? InputClass::hermitian : InputClass::general;
    const ComplexMatrix a = herm ? cpnorm::random_hermitian(rng, d)
                                 : cpnorm::random_matrix(rng, d, d);
    const auto sv = cpnorm::svd(phi.apply(a)).singular_values;
    if (q < 2.0 && sv.back() < 0.05 * sv.front()) continue;

    const ComplexMatrix grad = cpnorm::objective_gradient(phi, a, q, cls);
    const ComplexMatrix dir = herm ? cpnorm::random_hermitian(rng, d)
                                   : cpnorm::random_matrix(rng, d, d);
    double expected = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      expected += grad.data()[i].real() * dir.data()[i].real() +
                  grad.data()[i].imag() * dir.data()[i].imag();
    }
    ComplexMatrix ap = a, am = a;
    ComplexMatrix step = dir;
    step *= cplx{h, 0.0};
    ap += step;
    am -= step;
    const auto powq = [&](const ComplexMatrix& m) {
      return std::pow(cpnorm::schatten_norm(phi.apply(m), SchattenExponent(q)),
                      q);
    };
    const double fd = (powq(ap) - powq(am)) / (2.0 * h);
    worst = std::max(worst,
                     std::abs(fd - expected) / (1.0 + std::abs(expected)));
    ++done;
  }
  report(5, done >= 100 && worst <= 1e-5,
         fmt("gradient vs central differences on %d smooth instances: max "
             "relative error %.3e (tol 1e-5)",
             done, worst));
}

void criterion6(const std::vector<SuiteChannel>& channels,
                const std::vector<SolveCell>& cells) {
  const std::size_t n = cells.size();
  std::vector<double> deficits(n, 0.0);
  cpnorm::parallel_for(n, kJobs, [&](std::size_t idx) {
    const SuiteChannel& ch = channels[idx / 16];
    if (ch.d_in > 3) return;  // all suite channels satisfy this
    const std::size_t cell = idx % 16;
    const SchattenExponent p(kGrid[cell / 4]);
    const SchattenExponent q(kGrid[cell % 4]);
    const double bf_h = cpnorm::brute_force_norm(
        ch.map, p, q, InputClass::hermitian, 100000, false,
        cpnorm::derive_seed(kMasterSeed, 61, idx));
    const double bf_g = cpnorm::brute_force_norm(
        ch.map, p, q, InputClass::general, 100000, false,
        cpnorm::derive_seed(kMasterSeed, 62, idx));
    deficits[idx] = std::max(bf_h - cells[idx].hermitian,
                             bf_g - cells[idx].general);
  });
  double worst = -1e300;
  for (double d : deficits) worst = std::max(worst, d);
  report(6, worst <= 1e-4,
         fmt("oracle consistency over %zu cells x 2 classes: max "
             "(brute_force - solver) = %.3e (tol 1e-4)",
             n, worst));
}

void criterion7() {
  const cpnorm::MatrixUnitMap t = cpnorm::MatrixUnitMap::transpose_map(2);
  const cpnorm::CpCertificate cert = cpnorm::is_completely_positive(t);
  const bool library_ok =
      !cert.completely_positive && cert.min_choi_eigenvalue <= -0.99;

  const std::string cmd = std::string(CPNORM_CLI_PATH) +
                          " verify --family transpose --d 2 --pq 2 "
                          "> /dev/null 2>&1";
  const int refused = WEXITSTATUS(std::system(cmd.c_str()));
  report(7, library_ok && refused == 3,
         fmt("transpose negative control: min Choi eigenvalue %.6f "
             "(<= -0.99), CLI refusal exit code %d (want 3)",
             cert.min_choi_eigenvalue, refused));
}

void criterion8() {
  const std::string base = std::string(CPNORM_CLI_PATH) +
                           " verify --channels 3 --pq 1,2 --seed 20260808";
  const std::string f1 = "/tmp/cpnorm_acceptance_rep1.json";
  const std::string f2 = "/tmp/cpnorm_acceptance_rep2.json";
  const int c1 =
      WEXITSTATUS(std::system((base + " -o " + f1 + " 2>/dev/null").c_str()));
  const int c2 =
      WEXITSTATUS(std::system((base + " -o " + f2 + " 2>/dev/null").c_str()));
  auto slurp_no_timestamp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find("timestamp") != std::string::npos) continue;
      out << line << '\n';
    }
    return out.str();
  };
  const std::string a = slurp_no_timestamp(f1);
  const std::string b = slurp_no_timestamp(f2);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  report(8, c1 == 0 && c2 == 0 && !a.empty() && a == b,
         fmt("determinism: verify reruns byte-identical modulo timestamp "
             "(exit codes %d, %d; %zu bytes compared)",
             c1, c2, a.size()));
}

}  // namespace

int main() {
  std::printf("acceptance suite: seed %llu, %u jobs, kernels backend %s\n",
              static_cast<unsigned long long>(kMasterSeed), kJobs,
              std::string(cpnorm::kern::active().name).c_str());

  const std::vector<SuiteChannel> channels = make_suite_channels(50);
  const std::vector<SolveCell> cells = criterion1(channels);
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6(channels, cells);
  criterion7();
  criterion8();

  if (g_failures == 0) {
    std::printf("acceptance suite: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance suite: %d criteria FAILED\n", g_failures);
  return 1;
}
