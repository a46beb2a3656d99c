#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdpcut/anticonc.hpp"
#include "sdpcut/embedding.hpp"
#include "sdpcut/extremal.hpp"
#include "sdpcut/gegenbauer.hpp"
#include "sdpcut/graph.hpp"
#include "sdpcut/report.hpp"
#include "sdpcut/rng.hpp"
#include "sdpcut/rounding.hpp"
#include "sdpcut/solver.hpp"

namespace {

using nlohmann::json;
using namespace sdpcut;

constexpr std::uint64_t kDefaultSeed = 12345;  // fixed so runs are reproducible

// Exit codes: 0 all assertions pass, 1 a mathematical assertion failed,
// 2 I/O or usage error.
constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

class io_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open graph file: " + path);
  try {
    return WeightedGraph::parse(in);
  } catch (const parse_error& e) {
    throw io_error(path + ": " + e.what());
  }
}

UnitEmbedding load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open embedding file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return UnitEmbedding::from_json(buf.str());
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

std::vector<double> parse_weight_list(const std::string& text) {
  std::vector<double> weights;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      weights.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw io_error("bad weight entry: " + item);
    }
  }
  return weights;
}

void emit(const std::string& command, const json& params, std::uint64_t seed,
          const json& results, double elapsed, const std::string& json_out) {
  if (!json_out.empty())
    write_json_file(json_out, make_run_report(command, params, seed, results,
                                              elapsed));
}

json certificate_json(const MomentCertificate& c) {
  return {{"p", c.p},
          {"coeff", c.coeff},
          {"S_p", c.sp},
          {"implied_lower_bound", c.implied_lower_bound},
          {"guaranteed_sp_floor", c.guaranteed_sp_floor},
          {"floor_holds", c.floor_holds}};
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string graph, out, json_out;
  int d = 3;
  std::uint64_t seed = kDefaultSeed;
  bool no_triangle = false;
  int max_iters = 4000;
};

int run_solve(const SolveArgs& a) {
  Timer timer;
  WeightedGraph g = load_graph(a.graph);
  SolverConfig cfg;
  cfg.seed = a.seed;
  cfg.triangle_penalty = !a.no_triangle;
  cfg.max_iters = a.max_iters;
  SolveResult res = solve_low_rank(g, a.d, cfg);
  FeasibilityReport feas = check_feasibility(res.embedding, 1e-6, 8);

  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw io_error("cannot write embedding: " + a.out);
    out << res.embedding.to_json() << '\n';
  }

  std::ostringstream summary;
  summary << "objective=" << res.objective
          << " worst_violation=" << res.worst_violation
          << " converged=" << (res.converged ? "yes" : "no");
  json results = {
      {"objective", res.objective},
      {"worst_violation", res.worst_violation},
      {"iterations", res.iterations},
      {"converged", res.converged},
      {"triangle_penalty", !a.no_triangle},
      {"feasibility",
       {{"max_norm_deviation", feas.max_norm_deviation},
        {"worst_violation", feas.worst_violation},
        {"constraints_checked", feas.constraints_checked}}},
      {"summary", summary.str()}};
  json params = {{"graph", a.graph}, {"d", a.d},
                 {"triangle_penalty", !a.no_triangle},
                 {"max_iters", a.max_iters}, {"out", a.out}};
  emit("solve", params, a.seed, results, timer.seconds(), a.json_out);
  std::cout << "solve: " << summary.str() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RoundArgs {
  std::string graph, embedding, json_out;
  int d = 3;
  double epsilon = -1.0;  // <0 = default 2^(-3d)
  long trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  bool no_triangle = false;
  bool no_per_trial = false;
};

int run_round(const RoundArgs& a) {
  Timer timer;
  WeightedGraph g = load_graph(a.graph);
  std::optional<UnitEmbedding> emb;
  double sdp = 0.0;
  if (!a.embedding.empty()) {
    emb = load_embedding(a.embedding);
    if (emb->size() != g.num_vertices())
      throw io_error("embedding size does not match graph");
  } else {
    SolverConfig cfg;
    cfg.seed = a.seed;
    cfg.triangle_penalty = !a.no_triangle;
    emb = solve_low_rank(g, a.d, cfg).embedding;
  }
  sdp = sdp_objective(g, *emb);

  RoundingConfig rc;
  rc.epsilon = a.epsilon >= 0.0 ? a.epsilon : default_epsilon(emb->dim());
  rc.trials = a.trials;
  rc.seed = a.seed;
  std::vector<double> initial_values, final_values;
  TrialStats stats = rounding_trials(g, *emb, rc,
                                     a.no_per_trial ? nullptr : &initial_values,
                                     a.no_per_trial ? nullptr : &final_values);

  const bool monotone = stats.mean_final >= stats.mean_initial - 1e-12;
  std::ostringstream summary;
  summary << "mean_initial=" << stats.mean_initial
          << " mean_final=" << stats.mean_final << " best=" << stats.best_value
          << " sdp=" << sdp;
  json results = {{"sdp_objective", sdp},
                  {"epsilon", rc.epsilon},
                  {"trials", stats.trials},
                  {"mean_initial", stats.mean_initial},
                  {"mean_final", stats.mean_final},
                  {"stderr_initial", stats.stderr_initial},
                  {"stderr_final", stats.stderr_final},
                  {"mean_flips", stats.mean_flips},
                  {"best_value", stats.best_value},
                  {"best_cut", stats.best_cut.labels},
                  {"mean_final_ge_mean_initial", monotone},
                  {"summary", summary.str()}};
  if (!a.no_per_trial) {
    results["initial_values"] = initial_values;
    results["final_values"] = final_values;
  }
  json params = {{"graph", a.graph},       {"embedding", a.embedding},
                 {"d", a.d},               {"epsilon", rc.epsilon},
                 {"trials", a.trials},     {"per_trial", !a.no_per_trial},
                 {"triangle_penalty", !a.no_triangle}};
  emit("round", params, a.seed, results, timer.seconds(), a.json_out);
  std::cout << "round: " << summary.str() << '\n';
  return monotone ? kExitOk : kExitAssertion;
}

// ---------------------------------------------------------------------------

struct VerifyGeomArgs {
  std::string embedding, weights, json_out;
  int random_n = 0;
  int random_d = 0;
  double min_rho = -0.9;
  long samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  bool certificates_only = false;
};

int run_verify_geom(const VerifyGeomArgs& a, const std::string& command) {
  Timer timer;
  std::optional<UnitEmbedding> emb;
  if (!a.embedding.empty()) {
    emb = load_embedding(a.embedding);
  } else if (a.random_n > 0 && a.random_d > 0) {
    // Resample until the pairwise floor is met.
    for (int attempt = 0; attempt < 1000; ++attempt) {
      UnitEmbedding v = sample_sphere(a.random_n, a.random_d,
                                      derive_seed(a.seed, seed_salt::sphere,
                                                  5000 + attempt));
      auto probe = SignConfiguration::unweighted(v);
      if (a.random_n < 2 || probe.min_offdiag_rho() >= a.min_rho) {
        emb = std::move(v);
        break;
      }
    }
    if (!emb)
      throw io_error("could not sample a configuration with min rho >= " +
                     std::to_string(a.min_rho));
  } else {
    throw io_error("need --embedding or --random-n/--random-d");
  }

  std::vector<double> weights(emb->size(), 1.0);
  if (!a.weights.empty()) {
    weights = parse_weight_list(a.weights);
    if (static_cast<int>(weights.size()) != emb->size())
      throw io_error("weight count does not match configuration size");
  }
  SignConfiguration cfg(*emb, weights);

  LowerBoundReport report = lower_bound_report(cfg);
  bool ok = report.exact_dominates;
  if (report.admissible)
    ok = ok && report.net.floor_holds && report.matrix.floor_holds;

  json results = {{"n", cfg.size()},
                  {"d", cfg.dim()},
                  {"exact_second_moment", report.exact},
                  {"min_rho", report.min_rho},
                  {"admissible", report.admissible},
                  {"net_certificate", certificate_json(report.net)},
                  {"matrix_certificate", certificate_json(report.matrix)},
                  {"best_termwise_p", report.best_p},
                  {"best_termwise_bound", report.best_termwise},
                  {"exact_dominates", report.exact_dominates}};

  if (!a.certificates_only && a.samples > 0) {
    McEstimate mc = mc_second_moment(cfg, a.samples, a.seed);
    const double dev = std::abs(mc.estimate - report.exact);
    const bool mc_ok = dev <= 4.0 * std::max(mc.std_error, 1e-12) ||
                       dev <= 1e-9 * (1.0 + report.exact);
    results["mc"] = {{"estimate", mc.estimate},
                     {"std_error", mc.std_error},
                     {"samples", mc.samples},
                     {"within_4_sigma", mc_ok}};
    ok = ok && mc_ok;
  }

  std::ostringstream summary;
  summary << "exact=" << report.exact << " net_p=" << report.net.p
          << " matrix_p=" << report.matrix.p << " ok=" << (ok ? "yes" : "no");
  results["summary"] = summary.str();
  results["all_checks_pass"] = ok;

  json params = {{"embedding", a.embedding}, {"weights", a.weights},
                 {"random_n", a.random_n},   {"random_d", a.random_d},
                 {"min_rho", a.min_rho},     {"samples", a.samples},
                 {"certificates_only", a.certificates_only}};
  emit(command, params, a.seed, results, timer.seconds(), a.json_out);
  std::cout << command << ": " << summary.str() << '\n';
  return ok ? kExitOk : kExitAssertion;
}

// ---------------------------------------------------------------------------

struct GegenbauerArgs {
  std::string json_out;
  int d = 3;
  int kmax = -1;
  std::uint64_t seed = kDefaultSeed;  // echoed; the computation is exact
};

int run_gegenbauer(const GegenbauerArgs& a) {
  Timer timer;
  if (a.d < 3) throw io_error("gegenbauer requires --d >= 3");
  GegenbauerBasis basis(a.d);
  const int A = 10 * a.d;
  const int kmax = a.kmax > 0 ? a.kmax : A + 5;

  CoefficientTable table = coefficient_table(a.d, kmax);
  bool signs_ok = true;
  for (int k = 0; k <= kmax; ++k) {
    const double dk = table.delta[k];
    if (k <= A + 1)
      signs_ok = signs_ok && ((k % 2 == 0) ? dk < 0.0 : dk > 0.0);
    else
      signs_ok = signs_ok && dk == 0.0;
  }

  std::vector<double> ratios = ratio_table(a.d, A);
  bool ratios_increasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    ratios_increasing = ratios_increasing && ratios[i] > ratios[i - 1];
  const double rmin = ik_ratio_min(a.d, A);
  const bool ratio_ok = ratios_increasing && rmin > 1.9;

  Delta0Bound d0 = delta0_bound(a.d);

  // Spot agreement between the closed form and the quadrature oracle.
  double worst_rel = 0.0;
  for (int k = 0; k <= std::min(10, A); k += 2) {
    const double closed = I_closed(basis, k, A);
    const double quad = I_quadrature(basis, k, A);
    worst_rel = std::max(
        worst_rel, std::abs(closed - quad) / std::max(std::abs(closed), 1e-30));
  }
  const bool quad_ok = worst_rel <= 1e-8;

  QConstruction q = construct_Q(a.d);
  bool q_ok = q.C > 0.0 && q.q0 > 0.0 && q.max_grid_violation <= 1e-9;
  for (std::size_t k = 1; k < q.q_coeffs.size(); ++k)
    q_ok = q_ok && q.q_coeffs[k] >= -1e-9;

  const bool ok = signs_ok && ratio_ok && d0.holds && quad_ok && q_ok;

  std::ostringstream summary;
  summary << "d=" << a.d << " ratio_min=" << rmin << " |delta0|=" << d0.delta0
          << " C=" << q.C << " ok=" << (ok ? "yes" : "no");
  json results = {{"d", a.d},
                  {"A", A},
                  {"kmax", kmax},
                  {"I_A", table.I_A},
                  {"I_A_plus_1", table.I_A1},
                  {"delta", table.delta},
                  {"sign_pattern_ok", signs_ok},
                  {"ratio_min", rmin},
                  {"ratio_strictly_increasing", ratios_increasing},
                  {"ratio_ok", ratio_ok},
                  {"delta0", d0.delta0},
                  {"delta0_bound", d0.bound},
                  {"delta0_bound_holds", d0.holds},
                  {"closed_vs_quadrature_worst_rel", worst_rel},
                  {"quadrature_ok", quad_ok},
                  {"Q",
                   {{"C", q.C},
                    {"argmin_k", q.argmin_k},
                    {"q0", q.q0},
                    {"max_grid_violation", q.max_grid_violation},
                    {"reconstruction_error", q.reconstruction_error}}},
                  {"all_checks_pass", ok},
                  {"summary", summary.str()}};
  json params = {{"d", a.d}, {"kmax", a.kmax}};
  emit("gegenbauer", params, a.seed, results, timer.seconds(), a.json_out);
  std::cout << "gegenbauer: " << summary.str() << '\n';
  return ok ? kExitOk : kExitAssertion;
}

// ---------------------------------------------------------------------------

struct ExtremalArgs {
  std::string json_out;
  int d = 3;
  int n = 10;
  int configs = 100;
  long samples = 10000;
  long pairs = 200000;
  std::uint64_t seed = kDefaultSeed;
};

int run_extremal(const ExtremalArgs& a) {
  Timer timer;
  MeanSecondMoment identity =
      mean_second_moment_identity(a.d, a.n, a.configs, a.samples, a.seed);
  const double dev = std::abs(identity.mean - a.n);
  const bool identity_ok = dev <= 4.0 * std::max(identity.std_error, 1e-12);

  json caps = json::array();
  bool caps_ok = true;
  for (double cap_a : {0.5, 0.7, 0.9}) {
    const double bound = cap_tail_bound(cap_a, a.d);
    CapTailEstimate est = cap_tail_empirical(cap_a, a.d, a.pairs,
                                             splitmix64(a.seed + 17));
    const bool ok = est.frequency <= bound + 4.0 * est.std_error;
    caps_ok = caps_ok && ok;
    caps.push_back({{"a", cap_a},
                    {"bound", bound},
                    {"frequency", est.frequency},
                    {"std_error", est.std_error},
                    {"ok", ok}});
  }

  ExtremalSearchConfig sc;
  sc.d = a.d;
  sc.n = a.n;
  sc.seed = a.seed;
  sc.mc_samples = a.samples;
  FlatConfigResult flat = find_flat_configuration(sc);

  const bool ok = identity_ok && caps_ok;
  std::ostringstream summary;
  summary << "mean=" << identity.mean << " (target " << a.n << ")"
          << " flat_ratio=" << flat.ratio << " ok=" << (ok ? "yes" : "no");
  json results = {{"d", a.d},
                  {"n", a.n},
                  {"identity",
                   {{"mean", identity.mean},
                    {"std_error", identity.std_error},
                    {"configs", identity.configs},
                    {"ok", identity_ok}}},
                  {"cap_tail", caps},
                  {"flat_configuration",
                   {{"success", flat.success},
                    {"exact_second_moment", flat.exact},
                    {"ratio", flat.ratio},
                    {"min_rho", flat.min_rho},
                    {"attempts", flat.attempts}}},
                  {"all_checks_pass", ok},
                  {"summary", summary.str()}};
  json params = {{"d", a.d},         {"n", a.n},
                 {"configs", a.configs}, {"samples", a.samples},
                 {"pairs", a.pairs}};
  emit("extremal", params, a.seed, results, timer.seconds(), a.json_out);
  std::cout << "extremal: " << summary.str() << '\n';
  return ok ? kExitOk : kExitAssertion;
}

// ---------------------------------------------------------------------------

int run_report(const std::string& dir, const std::string& json_out) {
  MergedReport merged = merge_reports(dir);
  std::cout << format_report_table(merged);
  for (const auto& w : merged.warnings) std::cerr << "warning: " << w << '\n';
  if (!json_out.empty()) write_json_file(json_out, merged_report_json(merged));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-Cut SDP rounding with local improvement, plus numerical "
               "verification of the sign anti-concentration bounds"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve the low-rank SDP");
  solve->add_option("--graph", solve_args.graph, "edge-list file")->required();
  solve->add_option("--d", solve_args.d, "embedding dimension")->required();
  solve->add_option("--out", solve_args.out, "embedding JSON output path");
  solve->add_option("--max-iters", solve_args.max_iters, "iteration cap");
  solve->add_flag("--no-triangle", solve_args.no_triangle,
                  "drop the triangle-inequality penalty");
  solve->add_option("--seed", solve_args.seed, "random seed");
  solve->add_option("--json-out", solve_args.json_out, "run report path");

  RoundArgs round_args;
  auto* round = app.add_subcommand("round", "Hyperplane rounding with local "
                                            "improvement");
  round->add_option("--graph", round_args.graph, "edge-list file")->required();
  round->add_option("--embedding", round_args.embedding,
                    "embedding JSON (otherwise solve first)");
  round->add_option("--d", round_args.d, "dimension when solving first");
  round->add_option("--epsilon", round_args.epsilon,
                    "candidate threshold (default 2^(-3d))");
  round->add_option("--trials", round_args.trials, "number of trials");
  round->add_flag("--no-triangle", round_args.no_triangle,
                  "solve without the triangle penalty");
  round->add_flag("--no-per-trial", round_args.no_per_trial,
                  "omit per-trial values from the report");
  round->add_option("--seed", round_args.seed, "random seed");
  round->add_option("--json-out", round_args.json_out, "run report path");

  VerifyGeomArgs vg_args;
  auto* verify = app.add_subcommand("verify-geom",
                                    "Second-moment identity, Monte Carlo and "
                                    "certificate checks");
  verify->add_option("--embedding", vg_args.embedding, "embedding JSON");
  verify->add_option("--random-n", vg_args.random_n, "random config size");
  verify->add_option("--random-d", vg_args.random_d, "random config dimension");
  verify->add_option("--min-rho", vg_args.min_rho,
                     "resample until min pairwise rho is at least this");
  verify->add_option("--weights", vg_args.weights, "comma-separated weights");
  verify->add_option("--samples", vg_args.samples, "Monte Carlo samples");
  verify->add_option("--seed", vg_args.seed, "random seed");
  verify->add_option("--json-out", vg_args.json_out, "run report path");

  VerifyGeomArgs ps_args;
  ps_args.certificates_only = true;
  auto* powerseries = app.add_subcommand(
      "powerseries", "Power-series certificates only (no Monte Carlo)");
  powerseries->add_option("--embedding", ps_args.embedding, "embedding JSON");
  powerseries->add_option("--random-n", ps_args.random_n, "random config size");
  powerseries->add_option("--random-d", ps_args.random_d,
                          "random config dimension");
  powerseries->add_option("--min-rho", ps_args.min_rho,
                          "resample until min pairwise rho is at least this");
  powerseries->add_option("--weights", ps_args.weights,
                          "comma-separated weights");
  powerseries->add_option("--seed", ps_args.seed, "random seed");
  powerseries->add_option("--json-out", ps_args.json_out, "run report path");

  GegenbauerArgs geg_args;
  auto* geg = app.add_subcommand("gegenbauer",
                                 "Coefficient table, sign pattern, ratio and "
                                 "Q-construction report");
  geg->add_option("--d", geg_args.d, "dimension (>= 3)")->required();
  geg->add_option("--kmax", geg_args.kmax, "table size (default 10d+5)");
  geg->add_option("--seed", geg_args.seed, "random seed (echoed; run is exact)");
  geg->add_option("--json-out", geg_args.json_out, "run report path");

  ExtremalArgs ext_args;
  auto* ext = app.add_subcommand("extremal",
                                 "Spherical-cap tail and mean second-moment "
                                 "identity checks");
  ext->add_option("--d", ext_args.d, "dimension");
  ext->add_option("--n", ext_args.n, "configuration size");
  ext->add_option("--configs", ext_args.configs, "number of configurations");
  ext->add_option("--samples", ext_args.samples, "MC samples per config");
  ext->add_option("--pairs", ext_args.pairs, "pairs for the cap-tail check");
  ext->add_option("--seed", ext_args.seed, "random seed");
  ext->add_option("--json-out", ext_args.json_out, "run report path");

  std::string report_dir, report_json_out;
  std::uint64_t report_seed = kDefaultSeed;
  auto* report = app.add_subcommand("report", "Merge run reports into a table");
  report->add_option("dir", report_dir, "directory of run reports")->required();
  report->add_option("--seed", report_seed, "accepted for uniformity; unused");
  report->add_option("--json-out", report_json_out, "merged report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*round) return run_round(round_args);
    if (*verify) return run_verify_geom(vg_args, "verify-geom");
    if (*powerseries) return run_verify_geom(ps_args, "powerseries");
    if (*geg) return run_gegenbauer(geg_args);
    if (*ext) return run_extremal(ext_args);
    if (*report) return run_report(report_dir, report_json_out);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
