// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
//
// cpnorm CLI: Schatten p->q norms of completely positive maps, theorem
// verification suites, and output-purity sweeps. See README.md for the
// report formats and exit-code contract:
//   0 success, 2 invalid configuration, 3 channel not completely positive
//   (without --allow-non-cp), 4 failed verification invariants.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpnorm/channel.hpp"
#include "cpnorm/channel_json.hpp"
#include "cpnorm/doubling.hpp"
#include "cpnorm/eig.hpp"
#include "cpnorm/kernels.hpp"
#include "cpnorm/parallel.hpp"
#include "cpnorm/rng.hpp"
#include "cpnorm/schatten.hpp"
#include "cpnorm/solver.hpp"

namespace {

using cpnorm::ComplexMatrix;
using cpnorm::InputClass;
using cpnorm::MapRef;
using cpnorm::SchattenExponent;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotCp = 3;
constexpr int kExitFailed = 4;

constexpr double kGapTol = 1e-6;
constexpr double kPositiveEqualityTol = 1e-6;
constexpr double kChainFinalMarginTol = 1e-6;  // solver-supplied certificate

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Solver seeds depend on (master seed, class, p, q, channel index) only, so
// a `norm` run replays any suite cell bit for bit given the same seed.
std::uint64_t solver_seed(std::uint64_t master, const std::string& cls,
                          const SchattenExponent& p, const SchattenExponent& q,
                          std::uint64_t channel_index) {
  return cpnorm::derive_seed(master, fnv1a(cls + "|" + p.str() + "|" + q.str()),
                             channel_index);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json exponent_json(const SchattenExponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

struct ChannelOptions {
  std::string family;
  std::string kraus_file;
  std::size_t d = 2;
  std::size_t d_out = 0;
  double lambda = -1.0;
  double gamma = -1.0;
  std::size_t kraus_rank = 0;
  std::uint64_t channel_seed = 1;
  bool trace_preserving = true;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "identity|depolarizing|amplitude_damping|"
                    "random_stinespring|transpose");
    cmd->add_option("--kraus", kraus_file, "channel spec JSON file");
    cmd->add_option("--d", d, "input dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--d-out", d_out, "output dimension (default: d)");
    cmd->add_option("--lambda", lambda, "depolarizing strength in [0,1]");
    cmd->add_option("--gamma", gamma, "amplitude damping strength in [0,1]");
    cmd->add_option("--kraus-rank", kraus_rank,
                    "Kraus rank for random_stinespring");
    cmd->add_option("--channel-seed", channel_seed,
                    "seed for random_stinespring");
    cmd->add_flag("!--non-trace-preserving", trace_preserving,
                  "rescale random Kraus operators (CP but not TP)");
  }

  bool specified() const { return !family.empty() || !kraus_file.empty(); }

  cpnorm::ChannelSpec to_spec() const {
    if (!kraus_file.empty()) return cpnorm::load_channel_spec(kraus_file);
    cpnorm::ChannelSpec spec;
    spec.d_in = d;
    spec.d_out = d_out ? d_out : d;
    if (family == "identity") {
      spec.family = cpnorm::ChannelFamily::identity;
      spec.name = "identity";
    } else if (family == "depolarizing") {
      spec.family = cpnorm::ChannelFamily::depolarizing;
      spec.name = "depolarizing";
      if (lambda < 0.0) {
        throw std::invalid_argument("depolarizing channel needs --lambda");
      }
      spec.params["lambda"] = lambda;
    } else if (family == "amplitude_damping") {
      spec.family = cpnorm::ChannelFamily::amplitude_damping;
      spec.name = "amplitude_damping";
      if (gamma < 0.0) {
        throw std::invalid_argument("amplitude damping needs --gamma");
      }
      spec.params["gamma"] = gamma;
    } else if (family == "random_stinespring") {
      spec.family = cpnorm::ChannelFamily::random_stinespring;
      spec.name = "random_stinespring";
      spec.params["kraus_rank"] =
          static_cast<double>(kraus_rank ? kraus_rank : spec.d_in);
      spec.params["seed"] = static_cast<double>(channel_seed);
      spec.params["trace_preserving"] = trace_preserving ? 1.0 : 0.0;
    } else if (family == "transpose") {
      spec.family = cpnorm::ChannelFamily::transpose;
      spec.name = "transpose";
    } else {
      throw std::invalid_argument("unknown --family '" + family + "'");
    }
    return spec;
  }
};

struct SolverFlags {
  cpnorm::SolverOptions opts;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--restarts", opts.restarts, "multi-start count");
    cmd->add_option("--max-iters", opts.max_iterations,
                    "ascent iterations per restart");
    cmd->add_option("--step-init", opts.step_init, "initial step size");
    cmd->add_option("--tol-grad", opts.tol_grad,
                    "projected-gradient stopping tolerance");
    cmd->add_option("--tol-value", opts.tol_value,
                    "value-stall stopping tolerance");
    cmd->add_option("--eps-smooth", opts.epsilon_smooth,
                    "singular-value smoothing inside gradients");
  }
};

struct OutputOptions {
  std::string path;
  std::string format = "json";

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--output,-o", path, "write report here (default stdout)");
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot open output file: " + path);
    }
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CPNORM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("CPNORM_SEED is not a valid integer");
    }
  }
  return 20260808ULL;
}

json solver_options_json(const cpnorm::SolverOptions& o) {
  return json{{"restarts", o.restarts},
              {"max_iterations", o.max_iterations},
              {"step_init", o.step_init},
              {"tol_grad", o.tol_grad},
              {"tol_value", o.tol_value},
              {"epsilon_smooth", o.epsilon_smooth}};
}

json meta_json(std::uint64_t seed, const cpnorm::SolverOptions& opts,
               const json& tolerances) {
  json meta;
  meta["seed"] = seed;
  meta["tolerances"] = tolerances;
  meta["solver"] = solver_options_json(opts);
  meta["kernels"] = std::string(cpnorm::kern::active().name);
  meta["timestamp"] = iso_timestamp();
  return meta;
}

json channel_summary(const cpnorm::RealizedChannel& ch, double cp_margin) {
  json j;
  j["name"] = ch.spec.name;
  j["family"] = cpnorm::family_name(ch.spec.family);
  j["d_in"] = ch.spec.d_in;
  j["d_out"] = ch.spec.d_out;
  for (const auto& [key, value] : ch.spec.params) j[key] = value;
  j["cp_margin"] = cp_margin;
  return j;
}

double estimate_constraint_residual(const cpnorm::NormEstimate& est,
                                    const SchattenExponent& p) {
  if (est.input_class == InputClass::positive_trace_one) {
    return std::abs(est.maximizer.trace().real() - 1.0);
  }
  return std::abs(cpnorm::schatten_norm(est.maximizer, p) - 1.0);
}

json estimate_json(const cpnorm::NormEstimate& est, bool with_maximizer) {
  json j;
  j["value"] = est.value;
  j["converged"] = est.converged;
  j["iterations"] = est.iterations;
  j["restarts_used"] = est.restarts_used;
  j["best_restart"] = est.best_restart;
  j["grad_norm_final"] = est.grad_norm_final;
  if (with_maximizer) j["maximizer"] = cpnorm::matrix_to_json(est.maximizer);
  return j;
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

struct NormArgs {
  ChannelOptions channel;
  SolverFlags solver;
  OutputOptions output;
  std::string p_text = "1";
  std::string q_text = "2";
  std::string cls_text = "hermitian";
  std::optional<std::uint64_t> seed;
  bool allow_non_cp = false;
};

int run_norm(const NormArgs& args) {
  const SchattenExponent p = SchattenExponent::parse(args.p_text);
  const SchattenExponent q = SchattenExponent::parse(args.q_text);
  const InputClass cls = cpnorm::parse_input_class(args.cls_text);
  if (!args.channel.specified()) {
    throw std::invalid_argument("norm: specify --family or --kraus");
  }
  const cpnorm::RealizedChannel ch =
      cpnorm::make_channel(args.channel.to_spec());
  const std::uint64_t master = resolve_seed(args.seed);

  cpnorm::SolverOptions opts = args.solver.opts;
  opts.allow_non_cp = args.allow_non_cp;
  opts.seed = solver_seed(master, cpnorm::input_class_name(cls), p, q, 0);

  cpnorm::NormEstimate est;
  try {
    est = cpnorm::norm_pq(ch.ref(), p, q, cls, opts);
  } catch (const cpnorm::NotCompletelyPositiveError& e) {
    std::cerr << "error: " << e.what()
              << " (use --allow-non-cp for negative controls)\n";
    return kExitNotCp;
  }

  const double constraint = estimate_constraint_residual(est, p);
  const double recheck =
      std::abs(cpnorm::schatten_norm(ch.ref().apply(est.maximizer), q) -
               est.value);

  if (args.output.format == "csv") {
    std::ostringstream csv;
    csv << "value,p,q,class,converged,iterations,restarts_used,best_restart,"
           "grad_norm_final,constraint_residual,value_recheck,cp_margin,"
           "seed\n";
    csv << format_double(est.value) << ',' << p.str() << ',' << q.str() << ','
        << cpnorm::input_class_name(cls) << ',' << (est.converged ? 1 : 0)
        << ',' << est.iterations << ',' << est.restarts_used << ','
        << est.best_restart << ',' << format_double(est.grad_norm_final) << ','
        << format_double(constraint) << ',' << format_double(recheck) << ','
        << format_double(est.cp_margin) << ',' << master << '\n';
    args.output.write(csv.str());
    return kExitOk;
  }

  json report;
  report["config"] = {{"command", "norm"},
                      {"channel", cpnorm::channel_spec_to_json(ch.spec)},
                      {"p", exponent_json(p)},
                      {"q", exponent_json(q)},
                      {"class", cpnorm::input_class_name(cls)},
                      {"allow_non_cp", args.allow_non_cp},
                      {"format", args.output.format}};
  report["results"] = estimate_json(est, /*with_maximizer=*/true);
  report["residuals"] = {{"constraint", constraint},
                         {"value_recheck", recheck},
                         {"cp_margin", est.cp_margin}};
  report["meta"] =
      meta_json(master, opts, json{{"cp_margin", -cpnorm::kPsdClipTol}});
  args.output.write(report.dump(2));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify / suite
// ---------------------------------------------------------------------------

struct VerifyArgs {
  ChannelOptions channel;
  SolverFlags solver;
  OutputOptions output;
  std::size_t channels = 8;
  std::string pq_text = "1,1.5,2,3";
  std::size_t inputs = 1;
  std::optional<std::uint64_t> seed;
  bool allow_non_cp = false;
  unsigned jobs = std::thread::hardware_concurrency();
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const SchattenExponent e = SchattenExponent::parse(item);
    if (e.is_infinite()) {
      throw std::invalid_argument(
          "verification grids must use finite exponents");
    }
    out.push_back(e.value());
  }
  if (out.empty()) throw std::invalid_argument("empty exponent grid");
  return out;
}

struct VerifyRow {
  std::size_t index = 0;
  json channel;
  double p = 0.0;
  double q = 0.0;
  cpnorm::NormEstimate hermitian;
  cpnorm::NormEstimate general;
  std::optional<cpnorm::NormEstimate> positive;
  double relative_gap = 0.0;
  double positive_gap = 0.0;
  cpnorm::ProofChainReport chain;
  bool gap_pass = false;
  bool positive_pass = true;
  bool chain_pass = false;
  bool pass = false;
};

struct GeneratedChannel {
  cpnorm::RealizedChannel realized;
  double cp_margin = 0.0;
  std::uint64_t index = 0;
};

std::vector<GeneratedChannel> build_channels(const VerifyArgs& args,
                                             std::uint64_t master) {
  std::vector<GeneratedChannel> out;
  if (args.channel.specified()) {
    GeneratedChannel g;
    g.realized = cpnorm::make_channel(args.channel.to_spec());
    g.index = 0;
    out.push_back(std::move(g));
  } else {
    for (std::size_t c = 0; c < args.channels; ++c) {
      cpnorm::Rng rng(cpnorm::derive_seed(master, fnv1a("channel"), c));
      cpnorm::ChannelSpec spec;
      spec.family = cpnorm::ChannelFamily::random_stinespring;
      spec.name = "random_stinespring_" + std::to_string(c);
      spec.d_in = 2 + rng.next_u64() % 2;
      spec.d_out = 2 + rng.next_u64() % 2;
      const std::size_t rank_min = (spec.d_in + spec.d_out - 1) / spec.d_out;
      const std::size_t rank_max = spec.d_in * spec.d_out;
      spec.params["kraus_rank"] = static_cast<double>(
          rank_min + rng.next_u64() % (rank_max - rank_min + 1));
      spec.params["seed"] = static_cast<double>(
          cpnorm::derive_seed(master, fnv1a("kraus"), c));
      spec.params["trace_preserving"] = rng.next_u64() % 2 == 0 ? 1.0 : 0.0;
      GeneratedChannel g;
      g.realized = cpnorm::make_channel(spec);
      g.index = c;
      out.push_back(std::move(g));
    }
  }
  for (GeneratedChannel& g : out) {
    const cpnorm::CpCertificate cert =
        cpnorm::is_completely_positive(g.realized.ref());
    g.cp_margin = cert.min_choi_eigenvalue;
    if (!cert.completely_positive && !args.allow_non_cp) {
      throw cpnorm::NotCompletelyPositiveError(cert.min_choi_eigenvalue);
    }
  }
  return out;
}

json tolerances_json() {
  return json{{"gap", kGapTol},
              {"positive_equality", kPositiveEqualityTol},
              {"chain_relative", 1e-10},
              {"chain_elementwise", 1e-10},
              {"chain_margin", 1e-10},
              {"chain_final_margin", kChainFinalMarginTol},
              {"cp_margin", -cpnorm::kPsdClipTol}};
}

json chain_json(const cpnorm::ProofChainReport& r) {
  return json{{"doubling_lhs", r.doubling_lhs},
              {"doubling_ref", r.doubling_ref},
              {"doubling_rel_err", r.doubling_rel_err},
              {"abs_block_residual", r.abs_block_residual},
              {"abs_trace_lhs", r.abs_trace_lhs},
              {"abs_trace_ref", r.abs_trace_ref},
              {"abs_trace_rel_err", r.abs_trace_rel_err},
              {"ah_margin", r.ah_margin},
              {"final_margin", r.final_margin}};
}

int run_verify(const VerifyArgs& args, const char* command_name) {
  const std::vector<double> grid = parse_grid(args.pq_text);
  if (args.inputs < 1) {
    throw std::invalid_argument("verify: need --inputs >= 1");
  }
  const std::uint64_t master = resolve_seed(args.seed);

  std::vector<GeneratedChannel> channels;
  try {
    channels = build_channels(args, master);
  } catch (const cpnorm::NotCompletelyPositiveError& e) {
    std::cerr << "error: " << e.what()
              << " (use --allow-non-cp for negative controls)\n";
    return kExitNotCp;
  }

  const std::size_t per_channel = grid.size() * grid.size();
  const std::size_t n_rows = channels.size() * per_channel;
  std::vector<VerifyRow> rows(n_rows);

  cpnorm::parallel_for(n_rows, args.jobs, [&](std::size_t idx) {
    const GeneratedChannel& g = channels[idx / per_channel];
    const std::size_t cell = idx % per_channel;
    const SchattenExponent p(grid[cell / grid.size()]);
    const SchattenExponent q(grid[cell % grid.size()]);
    const MapRef phi = g.realized.ref();

    VerifyRow row;
    row.index = idx;
    row.channel = channel_summary(g.realized, g.cp_margin);
    row.p = p.value();
    row.q = q.value();

    cpnorm::SolverOptions opts = args.solver.opts;
    opts.allow_non_cp = args.allow_non_cp;

    opts.seed = solver_seed(master, "hermitian", p, q, g.index);
    row.hermitian = cpnorm::norm_pq(phi, p, q, InputClass::hermitian, opts);
    opts.seed = solver_seed(master, "general", p, q, g.index);
    row.general = cpnorm::norm_pq(phi, p, q, InputClass::general, opts);
    row.relative_gap = std::abs(row.general.value - row.hermitian.value) /
                       (1.0 + row.hermitian.value);
    row.gap_pass = row.relative_gap <= kGapTol;

    if (p.value() == 1.0) {
      opts.seed = solver_seed(master, "positive_trace_one", p, q, g.index);
      row.positive =
          cpnorm::norm_pq(phi, p, q, InputClass::positive_trace_one, opts);
      row.positive_gap = std::abs(row.positive->value - row.hermitian.value) /
                         (1.0 + row.hermitian.value);
      row.positive_pass = row.positive_gap <= kPositiveEqualityTol;
    }

    // proof chain on random inputs, worst case kept per row
    cpnorm::ChainTolerances tol;
    tol.final_margin = kChainFinalMarginTol;
    row.chain_pass = true;
    for (std::size_t k = 0; k < args.inputs; ++k) {
      cpnorm::Rng arng(cpnorm::derive_seed(
          master, fnv1a("chain|" + p.str() + "|" + q.str()) + k, g.index));
      const ComplexMatrix a =
          cpnorm::random_matrix(arng, phi.d_in(), phi.d_in());
      const cpnorm::ProofChainReport r = cpnorm::verify_proof_chain(
          phi, a, p, q.value(), row.hermitian.value, tol);
      if (k == 0 || !r.all_pass()) row.chain = r;
      row.chain_pass = row.chain_pass && r.all_pass();
    }
    row.pass = row.gap_pass && row.positive_pass && row.chain_pass;
    rows[idx] = std::move(row);
  });

  std::size_t passed = 0;
  double max_gap = 0.0, max_identity = 0.0, max_abs_block = 0.0;
  double min_ah = 0.0, min_final = 0.0, max_positive_gap = 0.0;
  std::vector<std::size_t> failing;
  for (const VerifyRow& row : rows) {
    if (row.pass) {
      ++passed;
    } else {
      failing.push_back(row.index);
    }
    max_gap = std::max(max_gap, row.relative_gap);
    max_identity = std::max(
        max_identity,
        std::max(row.chain.doubling_rel_err, row.chain.abs_trace_rel_err));
    max_abs_block = std::max(max_abs_block, row.chain.abs_block_residual);
    min_ah = std::min(min_ah, row.chain.ah_margin);
    min_final = std::min(min_final, row.chain.final_margin);
    max_positive_gap = std::max(max_positive_gap, row.positive_gap);
  }

  if (args.output.format == "csv") {
    std::ostringstream csv;
    csv << "index,name,family,d_in,d_out,p,q,hermitian,general,relative_gap,"
           "positive,positive_gap,doubling_rel_err,abs_block_residual,"
           "abs_trace_rel_err,ah_margin,final_margin,cp_margin,pass\n";
    for (const VerifyRow& row : rows) {
      csv << row.index << ',' << row.channel["name"].get<std::string>() << ','
          << row.channel["family"].get<std::string>() << ','
          << row.channel["d_in"].get<std::size_t>() << ','
          << row.channel["d_out"].get<std::size_t>() << ','
          << format_double(row.p) << ',' << format_double(row.q) << ','
          << format_double(row.hermitian.value) << ','
          << format_double(row.general.value) << ','
          << format_double(row.relative_gap) << ','
          << (row.positive ? format_double(row.positive->value) : "") << ','
          << (row.positive ? format_double(row.positive_gap) : "") << ','
          << format_double(row.chain.doubling_rel_err) << ','
          << format_double(row.chain.abs_block_residual) << ','
          << format_double(row.chain.abs_trace_rel_err) << ','
          << format_double(row.chain.ah_margin) << ','
          << format_double(row.chain.final_margin) << ','
          << format_double(row.channel["cp_margin"].get<double>()) << ','
          << (row.pass ? 1 : 0) << '\n';
    }
    args.output.write(csv.str());
  } else {
    json report;
    report["config"] = {{"command", command_name},
                        {"channels", channels.size()},
                        {"pq_grid", grid},
                        {"inputs_per_cell", args.inputs},
                        {"allow_non_cp", args.allow_non_cp},
                        {"format", args.output.format}};
    if (args.channel.specified()) {
      report["config"]["channel"] =
          cpnorm::channel_spec_to_json(channels.front().realized.spec);
    }
    json instances = json::array();
    for (const VerifyRow& row : rows) {
      json r;
      r["index"] = row.index;
      r["channel"] = row.channel;
      r["p"] = row.p;
      r["q"] = row.q;
      r["hermitian"] = estimate_json(row.hermitian, false);
      r["general"] = estimate_json(row.general, false);
      r["relative_gap"] = row.relative_gap;
      if (row.positive) {
        r["positive"] = estimate_json(*row.positive, false);
        r["positive_gap"] = row.positive_gap;
      }
      r["chain"] = chain_json(row.chain);
      r["pass"] = {{"gap", row.gap_pass},
                   {"positive", row.positive_pass},
                   {"chain", row.chain_pass},
                   {"all", row.pass}};
      instances.push_back(std::move(r));
    }
    report["results"] = {{"instances", std::move(instances)},
                         {"totals",
                          {{"instances", n_rows},
                           {"passed", passed},
                           {"failed", n_rows - passed}}}};
    report["residuals"] = {{"max_relative_gap", max_gap},
                           {"max_identity_rel_err", max_identity},
                           {"max_abs_block_residual", max_abs_block},
                           {"min_ah_margin", min_ah},
                           {"min_final_margin", min_final},
                           {"max_positive_gap", max_positive_gap}};
    report["meta"] = meta_json(master, args.solver.opts, tolerances_json());
    args.output.write(report.dump(2));
  }

  if (!failing.empty()) {
    std::cerr << "verification failed on " << failing.size() << " of "
              << n_rows << " rows:";
    for (std::size_t i : failing) std::cerr << ' ' << i;
    std::cerr << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// purity
// ---------------------------------------------------------------------------

struct PurityArgs {
  ChannelOptions channel;
  SolverFlags solver;
  OutputOptions output;
  std::string grid_text = "0,0.25,0.5,1";
  std::string q_text = "2";
  std::optional<std::uint64_t> seed;
  unsigned jobs = std::thread::hardware_concurrency();
};

int run_purity(const PurityArgs& args) {
  const SchattenExponent q = SchattenExponent::parse(args.q_text);
  const SchattenExponent p1(1.0);
  const std::uint64_t master = resolve_seed(args.seed);
  if (args.channel.family != "depolarizing" &&
      args.channel.family != "amplitude_damping") {
    throw std::invalid_argument(
        "purity: --family must be depolarizing or amplitude_damping");
  }
  std::vector<double> grid;
  {
    std::stringstream ss(args.grid_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw std::invalid_argument("purity: empty --grid");
  }

  struct PurityRow {
    double param;
    double nu;
    double hermitian;
    double gap;
    bool pass;
  };
  std::vector<PurityRow> rows(grid.size());

  cpnorm::parallel_for(grid.size(), args.jobs, [&](std::size_t i) {
    ChannelOptions copt = args.channel;
    if (copt.family == "depolarizing") {
      copt.lambda = grid[i];
    } else {
      copt.gamma = grid[i];
    }
    const cpnorm::RealizedChannel ch = cpnorm::make_channel(copt.to_spec());
    cpnorm::SolverOptions opts = args.solver.opts;
    opts.seed = solver_seed(master, "positive_trace_one", p1, q, i);
    const cpnorm::NormEstimate nu =
        cpnorm::norm_pq(ch.ref(), p1, q, InputClass::positive_trace_one, opts);
    opts.seed = solver_seed(master, "hermitian", p1, q, i);
    const cpnorm::NormEstimate herm =
        cpnorm::norm_pq(ch.ref(), p1, q, InputClass::hermitian, opts);
    const double gap = std::abs(nu.value - herm.value) / (1.0 + herm.value);
    rows[i] = PurityRow{grid[i], nu.value, herm.value, gap,
                        gap <= kPositiveEqualityTol};
  });

  bool all_pass = true;
  double max_gap = 0.0;
  for (const PurityRow& r : rows) {
    all_pass = all_pass && r.pass;
    max_gap = std::max(max_gap, r.gap);
  }

  if (args.output.format == "csv") {
    std::ostringstream csv;
    csv << "param,nu,hermitian,gap,pass\n";
    for (const PurityRow& r : rows) {
      csv << format_double(r.param) << ',' << format_double(r.nu) << ','
          << format_double(r.hermitian) << ',' << format_double(r.gap) << ','
          << (r.pass ? 1 : 0) << '\n';
    }
    args.output.write(csv.str());
  } else {
    json report;
    report["config"] = {{"command", "purity"},
                        {"family", args.channel.family},
                        {"grid", grid},
                        {"q", exponent_json(q)},
                        {"format", args.output.format}};
    json jrows = json::array();
    for (const PurityRow& r : rows) {
      jrows.push_back(json{{"param", r.param},
                           {"nu", r.nu},
                           {"hermitian", r.hermitian},
                           {"gap", r.gap},
                           {"pass", r.pass}});
    }
    report["results"] = {{"grid", std::move(jrows)}};
    report["residuals"] = {{"max_gap", max_gap}};
    report["meta"] = meta_json(
        master, args.solver.opts,
        json{{"positive_equality", kPositiveEqualityTol}});
    args.output.write(report.dump(2));
  }
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cpnorm: Schatten p->q norms and maximal output purity of completely "
      "positive maps, with mechanical verification of the Hermitian/general "
      "norm equality"};
  app.require_subcommand(1);

  NormArgs norm_args;
  CLI::App* norm_cmd = app.add_subcommand(
      "norm", "maximize ||Phi(A)||_q / ||A||_p over an input class");
  norm_args.channel.add_flags(norm_cmd);
  norm_args.solver.add_flags(norm_cmd);
  norm_args.output.add_flags(norm_cmd);
  norm_cmd->add_option("--p", norm_args.p_text, "input exponent (>=1 or inf)");
  norm_cmd->add_option("--q", norm_args.q_text,
                       "output exponent (>=1 or inf)");
  norm_cmd->add_option("--class", norm_args.cls_text,
                       "hermitian|general|positive");
  norm_cmd->add_option("--seed", norm_args.seed,
                       "master seed (fallback: CPNORM_SEED)");
  norm_cmd->add_flag("--allow-non-cp", norm_args.allow_non_cp,
                     "admit maps that fail the CP certificate");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify",
      "norm-equality and proof-chain verification over channel instances");
  verify_args.channel.add_flags(verify_cmd);
  verify_args.solver.add_flags(verify_cmd);
  verify_args.output.add_flags(verify_cmd);
  verify_cmd->add_option("--channels", verify_args.channels,
                         "random channels to generate (ignored with "
                         "--family/--kraus)");
  verify_cmd->add_option("--pq", verify_args.pq_text,
                         "comma list of finite exponents; all pairs are run");
  verify_cmd->add_option("--inputs", verify_args.inputs,
                         "random proof-chain inputs per (channel, p, q)");
  verify_cmd->add_option("--seed", verify_args.seed,
                         "master seed (fallback: CPNORM_SEED)");
  verify_cmd->add_option("--jobs", verify_args.jobs, "worker threads");
  verify_cmd->add_flag("--allow-non-cp", verify_args.allow_non_cp,
                       "admit maps that fail the CP certificate");

  VerifyArgs suite_args;
  suite_args.channels = 50;
  CLI::App* suite_cmd = app.add_subcommand(
      "suite",
      "preset verification campaign (50 channels, full exponent grid)");
  suite_args.solver.add_flags(suite_cmd);
  suite_args.output.add_flags(suite_cmd);
  suite_cmd->add_option("--channels", suite_args.channels, "channel count");
  suite_cmd->add_option("--seed", suite_args.seed,
                        "master seed (fallback: CPNORM_SEED)");
  suite_cmd->add_option("--jobs", suite_args.jobs, "worker threads");

  PurityArgs purity_args;
  CLI::App* purity_cmd = app.add_subcommand(
      "purity",
      "maximal output purity sweep with the 1->q norm cross-check");
  purity_args.channel.add_flags(purity_cmd);
  purity_args.solver.add_flags(purity_cmd);
  purity_args.output.add_flags(purity_cmd);
  purity_cmd->add_option("--grid", purity_args.grid_text,
                         "comma list of channel parameters");
  purity_cmd->add_option("--q", purity_args.q_text, "output exponent");
  purity_cmd->add_option("--seed", purity_args.seed,
                         "master seed (fallback: CPNORM_SEED)");
  purity_cmd->add_option("--jobs", purity_args.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm_args);
    if (verify_cmd->parsed()) return run_verify(verify_args, "verify");
    if (suite_cmd->parsed()) return run_verify(suite_args, "suite");
    if (purity_cmd->parsed()) return run_purity(purity_args);
  } catch (const cpnorm::NotCompletelyPositiveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotCp;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
