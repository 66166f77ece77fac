// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cpnorm/eig.hpp"
#include "cpnorm/rng.hpp"
#include "cpnorm/svd.hpp"

namespace cpnorm {

namespace {

constexpr double kInfSurrogate = 64.0;
constexpr std::uint64_t kRestartStream = 1;
constexpr std::uint64_t kBruteStream = 2;

double finite_or_surrogate(SchattenExponent e) {
  return e.is_infinite() ? kInfSurrogate : e.value();
}

double real_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x.data()[i].real() * y.data()[i].real() +
           x.data()[i].imag() * y.data()[i].imag();
  }
  return acc;
}

// Gradient of ||A||_p at unit-norm A (smoothed), used only to project the
// ascent direction onto the constraint tangent space.
ComplexMatrix norm_surface_normal(const ComplexMatrix& a, double p,
                                  double eps) {
  const Svd s = svd(a);
  ComplexMatrix scaled = s.left;
  for (std::size_t c = 0; c < scaled.cols(); ++c) {
    const double sig = s.singular_values[c];
    const double w = std::pow(std::sqrt(sig * sig + eps * eps), p - 1.0);
    for (std::size_t r = 0; r < scaled.rows(); ++r) scaled(r, c) *= w;
  }
  return mul_nc(scaled, s.right);
}

ComplexMatrix tangential(const ComplexMatrix& grad,
                         const ComplexMatrix& normal) {
  const double nn = real_inner(normal, normal);
  if (nn <= 0.0) return grad;
  const double coef = real_inner(normal, grad) / nn;
  ComplexMatrix out = grad;
  out -= coef * normal;
  return out;
}

double objective(const MapRef& phi, const ComplexMatrix& a,
                 SchattenExponent q) {
  return schatten_norm(phi.apply(a), q);
}

// Backtracking line search with a plain improvement test: halve until the
// objective rises, then keep doubling while it still rises (anisotropic
// ridges starve pure halving of step length). `eval` maps a step size to a
// (candidate, value) pair; returns false when no step >= 1e-14 improves.
template <typename Eval, typename Candidate>
bool line_search(double& step, double f, const Eval& eval, Candidate& best,
                 double& f_best) {
  while (step >= 1e-14) {
    auto [cand, fc] = eval(step);
    if (fc > f) {
      best = std::move(cand);
      f_best = fc;
      for (int grow = 0; grow < 8; ++grow) {
        const double wider = step * 2.0;
        auto [cand2, fc2] = eval(wider);
        if (fc2 <= f_best) break;
        best = std::move(cand2);
        f_best = fc2;
        step = wider;
      }
      return true;
    }
    step *= 0.5;
  }
  return false;
}

struct RestartResult {
  double value = 0.0;
  ComplexMatrix maximizer;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
};

// Structured starting points aimed at the PSD-aligned global basin that
// dominates the p > q and q = 1 regimes: the identity and the adjoint
// witness Phi^+(I). Both are Hermitian, hence valid for every class.
ComplexMatrix structured_start(const MapRef& phi, int which) {
  if (which == 0) return ComplexMatrix::identity(phi.d_in());
  return phi.adjoint_apply(ComplexMatrix::identity(phi.d_out()))
      .hermitian_part();
}

RestartResult run_restart(const MapRef& phi, SchattenExponent p,
                          SchattenExponent q, InputClass input_class,
                          const SolverOptions& opts, std::uint64_t seed,
                          int restart_index,
                          const ComplexMatrix* warm_start = nullptr) {
  Rng rng(seed);
  const std::size_t d = phi.d_in();
  ComplexMatrix a;
  if (warm_start != nullptr) {
    a = *warm_start;
  } else if (restart_index >= 0 && restart_index <= 1) {
    a = structured_start(phi, restart_index);
  } else {
    a = input_class == InputClass::general ? random_matrix(rng, d, d)
                                           : random_hermitian(rng, d);
  }
  a = project_to_class(a, p, input_class);

  const double q_grad = finite_or_surrogate(q);
  const double p_grad = finite_or_surrogate(p);

  RestartResult res;
  res.maximizer = a;
  double f = objective(phi, a, q);
  double step = opts.step_init;
  int stall = 0;

  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    ComplexMatrix grad =
        objective_gradient(phi, a, q_grad, input_class, opts.epsilon_smooth);
    ComplexMatrix normal =
        input_class == InputClass::positive_trace_one
            ? ComplexMatrix::identity(d)
            : norm_surface_normal(a, p_grad, opts.epsilon_smooth);
    ComplexMatrix tangent = tangential(grad, normal);
    const double gnorm = tangent.frobenius_norm();
    res.grad_norm = gnorm;
    if (gnorm < opts.tol_grad) {
      res.converged = true;
      break;
    }
    tangent *= cplx{1.0 / gnorm, 0.0};

    const auto eval = [&](double s) -> std::pair<ComplexMatrix, double> {
      ComplexMatrix trial = a;
      trial += s * tangent;
      try {
        ComplexMatrix cand = project_to_class(trial, p, input_class);
        const double fc = objective(phi, cand, q);
        return {std::move(cand), fc};
      } catch (const std::invalid_argument&) {
        return {ComplexMatrix(), -1.0};  // left the representable class
      }
    };
    ComplexMatrix cand;
    double f_cand = f;
    if (!line_search(step, f, eval, cand, f_cand)) {
      res.converged = true;  // no ascent at the smallest step
      break;
    }
    const double delta = f_cand - f;
    a = std::move(cand);
    f = f_cand;
    step = std::min(step * 1.5, 2.0);
    stall = delta < opts.tol_value ? stall + 1 : 0;
    if (stall >= 10) {
      res.converged = true;
      break;
    }
  }

  // exact re-evaluation (matters when infinite exponents ran on surrogates)
  a = project_to_class(a, p, input_class);
  res.maximizer = a;
  res.value = objective(phi, a, q);
  return res;
}

ComplexMatrix unit_vector(Rng& rng, std::size_t d) {
  ComplexMatrix v(d, 1);
  for (std::size_t i = 0; i < d; ++i) v(i, 0) = rng.normal_cplx();
  const double n = v.frobenius_norm();
  v *= cplx{1.0 / n, 0.0};
  return v;
}

cplx vdot(const ComplexMatrix& x, const ComplexMatrix& y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += std::conj(x.data()[i]) * y.data()[i];
  }
  return acc;
}

// Remove the complex span of u (radial and phase directions, both neutral).
void tangentialize_vec(const ComplexMatrix& u, ComplexMatrix& g) {
  const cplx proj = vdot(u, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.data()[i] -= proj * u.data()[i];
  }
}

// p = 1 specialization. The trace-norm sphere is kinked at rank-deficient
// matrices, which defeats entrywise projected ascent, but the maximum of the
// convex objective over the unit trace-norm ball sits at its extreme points:
// u u^H for the Hermitian and positive classes (the sign is immaterial to
// the norm), u v^H for the general class. Ascend over those unit vectors,
// where the landscape is smooth.
RestartResult run_restart_rank_one(const MapRef& phi, SchattenExponent q,
                                   InputClass input_class,
                                   const SolverOptions& opts,
                                   std::uint64_t seed, int restart_index,
                                   const ComplexMatrix* warm_u = nullptr,
                                   const ComplexMatrix* warm_v = nullptr) {
  Rng rng(seed);
  const std::size_t d = phi.d_in();
  const bool two_sided = input_class == InputClass::general;
  ComplexMatrix u(d, 1);
  if (warm_u != nullptr) {
    u = *warm_u;
  } else if (restart_index == 0) {
    // leading eigendirection of the adjoint witness
    const HermitianEigen eig = hermitian_eig(structured_start(phi, 1));
    for (std::size_t i = 0; i < d; ++i) u(i, 0) = eig.eigenvectors(i, 0);
  } else {
    u = unit_vector(rng, d);
  }
  ComplexMatrix v =
      two_sided ? (warm_v != nullptr ? *warm_v
                                     : (restart_index == 0
                                            ? u
                                            : unit_vector(rng, d)))
                : u;
  const double q_grad = finite_or_surrogate(q);

  const auto assemble = [&](const ComplexMatrix& lu, const ComplexMatrix& rv) {
    return mul_nc(lu, rv);  // u v^H (v = u for one-sided classes)
  };
  const auto renorm = [](ComplexMatrix& w) {
    w *= cplx{1.0 / w.frobenius_norm(), 0.0};
  };

  RestartResult res;
  ComplexMatrix a = assemble(u, v);
  res.maximizer = a;
  double f = objective(phi, a, q);
  double step = opts.step_init;
  int stall = 0;

  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    const ComplexMatrix grad_a = objective_gradient(
        phi, a, q_grad,
        two_sided ? InputClass::general : InputClass::hermitian,
        opts.epsilon_smooth);
    ComplexMatrix gu = mul(grad_a, v);
    if (!two_sided) gu *= cplx{2.0, 0.0};
    ComplexMatrix gv = two_sided ? mul_cn(grad_a, u) : ComplexMatrix(d, 1);
    tangentialize_vec(u, gu);
    if (two_sided) tangentialize_vec(v, gv);
    const double gnorm = std::sqrt(real_inner(gu, gu) + real_inner(gv, gv));
    res.grad_norm = gnorm;
    if (gnorm < opts.tol_grad) {
      res.converged = true;
      break;
    }
    gu *= cplx{1.0 / gnorm, 0.0};
    if (two_sided) gv *= cplx{1.0 / gnorm, 0.0};

    struct Candidate {
      ComplexMatrix u, v, a;
    };
    const auto eval = [&](double s) -> std::pair<Candidate, double> {
      Candidate c;
      c.u = u;
      c.u += s * gu;
      renorm(c.u);
      if (two_sided) {
        c.v = v;
        c.v += s * gv;
        renorm(c.v);
      } else {
        c.v = c.u;
      }
      c.a = assemble(c.u, c.v);
      const double fc = objective(phi, c.a, q);
      return {std::move(c), fc};
    };
    Candidate cand;
    double f_cand = f;
    if (!line_search(step, f, eval, cand, f_cand)) {
      res.converged = true;
      break;
    }
    const double delta = f_cand - f;
    u = std::move(cand.u);
    v = std::move(cand.v);
    a = std::move(cand.a);
    f = f_cand;
    step = std::min(step * 1.5, 2.0);
    stall = delta < opts.tol_value ? stall + 1 : 0;
    if (stall >= 10) {
      res.converged = true;
      break;
    }
  }

  res.maximizer = a;
  res.value = objective(phi, a, q);
  return res;
}

}  // namespace

std::string input_class_name(InputClass c) {
  switch (c) {
    case InputClass::hermitian: return "hermitian";
    case InputClass::general: return "general";
    case InputClass::positive_trace_one: return "positive_trace_one";
  }
  return "unknown";
}

InputClass parse_input_class(const std::string& text) {
  if (text == "hermitian") return InputClass::hermitian;
  if (text == "general") return InputClass::general;
  if (text == "positive" || text == "positive_trace_one") {
    return InputClass::positive_trace_one;
  }
  throw std::invalid_argument("unknown input class '" + text + "'");
}

void SolverOptions::validate() const {
  if (restarts < 1) throw std::invalid_argument("SolverOptions: restarts >= 1");
  if (max_iterations < 1 || step_init <= 0.0 || tol_grad <= 0.0 ||
      tol_value <= 0.0 || epsilon_smooth <= 0.0) {
    throw std::invalid_argument("SolverOptions: parameters must be positive");
  }
}

ComplexMatrix project_to_class(const ComplexMatrix& a, SchattenExponent p,
                               InputClass input_class) {
  if (!a.is_square()) {
    throw std::invalid_argument("project_to_class: matrix must be square");
  }
  switch (input_class) {
    case InputClass::general: {
      const double n = schatten_norm(a, p);
      if (n == 0.0) {
        throw std::invalid_argument("project_to_class: zero input");
      }
      return (1.0 / n) * a;
    }
    case InputClass::hermitian: {
      const ComplexMatrix h = a.hermitian_part();
      const double n = schatten_norm(h, p);
      if (n == 0.0) {
        throw std::invalid_argument("project_to_class: zero Hermitian part");
      }
      return (1.0 / n) * h;
    }
    case InputClass::positive_trace_one: {
      const ComplexMatrix h = a.hermitian_part();
      if (h.max_abs() == 0.0) {
        throw std::invalid_argument("project_to_class: zero input");
      }
      const HermitianEigen eig = hermitian_eig(h);
      std::vector<double> lam = eig.eigenvalues;
      double total = 0.0;
      for (double& l : lam) {
        l = std::max(l, 0.0);
        total += l;
      }
      if (total <= 0.0) {
        // continuous limit of clip-and-normalize: all weight on the top
        // eigendirection
        std::fill(lam.begin(), lam.end(), 0.0);
        lam.front() = 1.0;
      } else {
        for (double& l : lam) l /= total;
      }
      return eigen_recompose(eig, lam);
    }
  }
  throw std::logic_error("project_to_class: unreachable");
}

ComplexMatrix objective_gradient(const MapRef& phi, const ComplexMatrix& a,
                                 double q, InputClass input_class,
                                 double epsilon_smooth) {
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("objective_gradient: q must be finite >= 1");
  }
  const ComplexMatrix b = phi.apply(a);
  ComplexMatrix outer;
  if (input_class == InputClass::general) {
    // d Tr|B|^q = <q V S^{q-1} W^H, dB> with B = V S W^H
    const Svd s = svd(b);
    ComplexMatrix scaled = s.left;
    for (std::size_t c = 0; c < scaled.cols(); ++c) {
      const double sig = s.singular_values[c];
      const double w =
          std::pow(std::sqrt(sig * sig + epsilon_smooth * epsilon_smooth),
                   q - 1.0);
      for (std::size_t r = 0; r < scaled.rows(); ++r) scaled(r, c) *= w;
    }
    outer = mul_nc(scaled, s.right);
  } else {
    // Hermitian branch: q sgn(B) |B|^{q-1} in the eigenbasis of B
    const HermitianEigen eig = hermitian_eig(b.hermitian_part());
    std::vector<double> w(eig.eigenvalues.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double lam = eig.eigenvalues[i];
      const double mag =
          std::pow(std::sqrt(lam * lam + epsilon_smooth * epsilon_smooth),
                   q - 1.0);
      w[i] = (lam > 0.0 ? mag : (lam < 0.0 ? -mag : 0.0));
    }
    outer = eigen_recompose(eig, w);
  }
  ComplexMatrix grad = phi.adjoint_apply(outer);
  grad *= cplx{q, 0.0};
  if (input_class != InputClass::general) {
    grad = grad.hermitian_part();
  }
  return grad;
}

NormEstimate norm_pq(const MapRef& phi, SchattenExponent p,
                     SchattenExponent q, InputClass input_class,
                     const SolverOptions& opts) {
  opts.validate();
  const CpCertificate cert = is_completely_positive(phi);
  if (!cert.completely_positive && !opts.allow_non_cp) {
    throw NotCompletelyPositiveError(cert.min_choi_eigenvalue);
  }

  NormEstimate best;
  best.input_class = input_class;
  best.cp_margin = cert.min_choi_eigenvalue;
  best.restarts_used = opts.restarts;
  const bool rank_one_mode = !p.is_infinite() && p.value() == 1.0;
  bool have = false;
  for (int r = 0; r < opts.restarts; ++r) {
    const std::uint64_t seed =
        derive_seed(opts.seed, kRestartStream, static_cast<std::uint64_t>(r));
    const RestartResult res =
        rank_one_mode
            ? run_restart_rank_one(phi, q, input_class, opts, seed, r)
            : run_restart(phi, p, q, input_class, opts, seed, r);
    if (!have || res.value > best.value) {
      have = true;
      best.value = res.value;
      best.maximizer = res.maximizer;
      best.best_restart = r;
      best.iterations = res.iterations;
      best.converged = res.converged;
      best.grad_norm_final = res.grad_norm;
    }
  }

  // polish: continue the ascent from the winning point with a fresh step
  // schedule; pure warm-started gradient ascent, kept only if it improves
  const std::uint64_t polish_seed = derive_seed(opts.seed, kRestartStream,
                                                static_cast<std::uint64_t>(
                                                    opts.restarts));
  RestartResult polished;
  if (rank_one_mode) {
    const Svd s = svd(best.maximizer);
    const std::size_t d = phi.d_in();
    ComplexMatrix u0(d, 1), v0(d, 1);
    for (std::size_t i = 0; i < d; ++i) {
      u0(i, 0) = s.left(i, 0);
      v0(i, 0) = s.right(i, 0);
    }
    polished = run_restart_rank_one(phi, q, input_class, opts, polish_seed,
                                    -1, &u0, &v0);
  } else {
    polished = run_restart(phi, p, q, input_class, opts, polish_seed, -1,
                           &best.maximizer);
  }
  if (polished.value > best.value) {
    best.value = polished.value;
    best.maximizer = polished.maximizer;
    best.iterations += polished.iterations;
    best.converged = polished.converged;
    best.grad_norm_final = polished.grad_norm;
  }
  return best;
}

double brute_force_norm(const MapRef& phi, SchattenExponent p,
                        SchattenExponent q, InputClass input_class,
                        std::size_t samples, bool refine, std::uint64_t seed) {
  if (phi.d_in() > 3) {
    throw std::invalid_argument("brute_force_norm: d_in <= 3 only");
  }
  if (samples == 0) {
    throw std::invalid_argument("brute_force_norm: need samples >= 1");
  }
  const std::size_t d = phi.d_in();
  Rng rng(derive_seed(seed, kBruteStream, 0));
  double best_f = -1.0;
  ComplexMatrix best_a;
  for (std::size_t s = 0; s < samples; ++s) {
    ComplexMatrix raw = input_class == InputClass::general
                            ? random_matrix(rng, d, d)
                            : random_hermitian(rng, d);
    const ComplexMatrix a = project_to_class(raw, p, input_class);
    const double f = objective(phi, a, q);
    if (f > best_f) {
      best_f = f;
      best_a = a;
    }
  }

  if (refine) {
    // coordinate-wise pattern search with a shrinking step; stays a lower
    // bound since every candidate is a feasible class member
    double delta = 0.1;
    std::size_t budget = 40000;
    while (delta > 1e-7 && budget > 0) {
      bool improved = false;
      for (std::size_t i = 0; i < d && budget > 0; ++i) {
        for (std::size_t j = 0; j < d && budget > 0; ++j) {
          for (int part = 0; part < 2; ++part) {
            if (input_class != InputClass::general && i == j && part == 1) {
              continue;  // Hermitian diagonal stays real
            }
            if (input_class != InputClass::general && j < i) continue;
            for (double sign : {1.0, -1.0}) {
              if (budget == 0) break;
              --budget;
              ComplexMatrix cand_raw = best_a;
              const cplx bump = part == 0 ? cplx{sign * delta, 0.0}
                                          : cplx{0.0, sign * delta};
              cand_raw(i, j) += bump;
              if (input_class != InputClass::general && i != j) {
                cand_raw(j, i) += std::conj(bump);
              }
              ComplexMatrix cand;
              try {
                cand = project_to_class(cand_raw, p, input_class);
              } catch (const std::invalid_argument&) {
                continue;
              }
              const double f = objective(phi, cand, q);
              if (f > best_f + 1e-15) {
                best_f = f;
                best_a = cand;
                improved = true;
              }
            }
          }
        }
      }
      if (!improved) delta *= 0.5;
    }
  }
  return best_f;
}

}  // namespace cpnorm
