// Acceptance suite: runs every criterion end to end and prints one line per
// criterion. Exit code 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdpcut/anticonc.hpp"
#include "sdpcut/embedding.hpp"
#include "sdpcut/extremal.hpp"
#include "sdpcut/gegenbauer.hpp"
#include "sdpcut/graph.hpp"
#include "sdpcut/rng.hpp"
#include "sdpcut/rounding.hpp"
#include "sdpcut/solver.hpp"
#include "test_helpers.hpp"

using namespace sdpcut;
using namespace sdpcut::testing;

namespace {

struct Harness {
  int failures = 0;

  void report(int id, const std::string& label, bool ok,
              const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  --  %s\n", ok ? "PASS" : "FAIL", id,
                label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// --------------------------------------------------------------------------
// 1. Sheppard / exact-kernel agreement, 50 configs x 1e6 samples, <= 2 min.
void criterion_1(Harness& h) {
  Stopwatch watch;
  const int dims[3] = {2, 3, 5};
  int failures = 0, repeats = 0;
  for (int c = 0; c < 50; ++c) {
    const int d = dims[c % 3];
    auto cfg = SignConfiguration::unweighted(
        random_unit_vectors(20, d, 100 + c));
    const double exact = exact_second_moment(cfg);
    auto run = [&](std::uint64_t seed) {
      auto est = mc_second_moment(cfg, 1000000, seed);
      return std::abs(est.estimate - exact) <= 4.0 * est.std_error;
    };
    if (!run(9000 + c)) {
      ++repeats;  // a 4-sigma miss is expected once in ~16k; one retry allowed
      if (!run(1000000 + c)) ++failures;
    }
  }
  const double elapsed = watch.seconds();
  h.report(1, "Sheppard/exact-kernel agreement",
           failures == 0 && elapsed <= 120.0,
           "failures=" + std::to_string(failures) +
               " repeats=" + std::to_string(repeats) +
               " elapsed=" + fmt(elapsed) + "s (limit 120s)");
}

// --------------------------------------------------------------------------
// 2. Second-moment lower-bound certificates on 100 admissible configurations.
void criterion_2(Harness& h) {
  Stopwatch watch;
  std::mt19937_64 gen(4242);
  int failures = 0;
  for (int c = 0; c < 100; ++c) {
    const int d = 2 + static_cast<int>(gen() % 4);       // 2..5
    const int n = 10 + static_cast<int>(gen() % 91);     // 10..100
    auto cfg = SignConfiguration::unweighted(
        random_cap_vectors(n, d, 500 + c));  // min rho >= -0.8942
    if (cfg.min_offdiag_rho() < -0.9) {
      ++failures;
      continue;
    }
    const double exact = exact_second_moment(cfg);
    auto net = net_certificate(cfg);
    auto mat = matrix_certificate(cfg);
    const double slop = 1e-9 * (1.0 + std::abs(exact));
    if (!(exact >= net.implied_lower_bound - slop)) ++failures;
    if (!net.floor_holds) ++failures;
    if (!mat.floor_holds) ++failures;
  }
  h.report(2, "second-moment net and matrix certificates", failures == 0,
           "failures=" + std::to_string(failures) +
               " elapsed=" + fmt(watch.seconds()) + "s");
}

// --------------------------------------------------------------------------
// 3. PSD sum lower bound on 200 precondition-satisfying instances.
void criterion_3(Harness& h) {
  std::mt19937_64 gen(777);
  int failures = 0;
  for (int c = 0; c < 200; ++c) {
    const int rank_dim = 1 + static_cast<int>(gen() % 6);  // D' in 1..6
    const int n = 5 + static_cast<int>(gen() % 36);        // 5..40
    // First coordinate floor beta keeps min rho >= 2 beta^2 - 1, hence
    // delta * D <= 0.45 by construction.
    const double beta = std::sqrt((1.0 - 0.45 / rank_dim) / 2.0);
    auto v = random_cap_vectors(n, rank_dim, 1300 + c, beta);
    Eigen::MatrixXd a = v.gram();
    double delta = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) delta = std::max(delta, -a(i, j));
    auto check = psd_sum_check(a, rank_dim, delta);
    if (!check.preconditions_ok || !check.holds) ++failures;
  }
  h.report(3, "PSD sum lower bound (lemma preconditions met)", failures == 0,
           "failures=" + std::to_string(failures) + " of 200");
}

// --------------------------------------------------------------------------
// 4. Hadamard-power rank bound and PSD-ness.
void criterion_4(Harness& h) {
  int failures = 0;
  std::ostringstream detail;
  for (int d : {2, 3}) {
    for (int p : {1, 3, 5}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto v = random_unit_vectors(30, d, 9000 + 17 * seed + d + p);
        auto check = hadamard_rank_check(v, p, 1e-9, 1e-8);
        if (!check.rank_ok || !check.psd_ok) ++failures;
      }
    }
  }
  h.report(4, "Hadamard power rank <= C(d+p-1,p), min eig >= -1e-8",
           failures == 0, "failures=" + std::to_string(failures) + " of 30");
}

// --------------------------------------------------------------------------
// 5. Gegenbauer closed form vs quadrature, sign pattern, delta_0, ratio.
void criterion_5(Harness& h) {
  Stopwatch watch;
  int failures = 0;
  std::ostringstream detail;
  for (int d : {3, 4, 5}) {
    GegenbauerBasis basis(d);
    const int a_big = 10 * d;
    for (int a : {5, a_big}) {
      for (int k = 0; k <= std::min(a + 3, 40); ++k) {
        const double closed = I_closed(basis, k, a);
        const double quad = I_quadrature(basis, k, a);
        if (!(std::abs(closed - quad) <=
              std::max(1e-8 * std::abs(closed), 1e-13)))
          ++failures;
      }
    }
    for (int k = 0; k <= a_big + 5; ++k) {
      const double dk = delta_k(d, k);
      const bool ok = (k <= a_big + 1) ? ((k % 2 == 0) ? dk < 0.0 : dk > 0.0)
                                       : dk == 0.0;
      if (!ok) ++failures;
    }
    auto d0 = delta0_bound(d);
    if (!d0.holds) ++failures;
    const double rmin = ik_ratio_min(d, a_big);
    auto ratios = ratio_table(d, a_big);
    for (std::size_t i = 1; i < ratios.size(); ++i)
      if (!(ratios[i] > ratios[i - 1])) ++failures;
    if (!(rmin > 1.9)) ++failures;
    detail << "d" << d << ":ratio_min=" << rmin << " ";
  }
  const double elapsed = watch.seconds();
  h.report(5, "Gegenbauer table, signs, |delta_0| bound, ratio > 1.9",
           failures == 0 && elapsed <= 60.0,
           detail.str() + "failures=" + std::to_string(failures) +
               " elapsed=" + fmt(elapsed) + "s (limit 60s)");
}

// --------------------------------------------------------------------------
// 6. Rounding soundness on 50 solved instances.
void criterion_6(Harness& h) {
  Stopwatch watch;
  std::mt19937_64 gen(31337);
  std::mt19937_64 shuffler(5);
  int failures = 0;
  for (int c = 0; c < 50; ++c) {
    const int n = 4 + static_cast<int>(gen() % 13);  // 4..16
    auto g = random_graph(n, 0.5, 2000 + c);
    const int d = 2 + (c % 2);
    SolverConfig scfg;
    scfg.seed = 50 + c;
    scfg.max_iters = 800;
    auto solved = solve_low_rank(g, d, scfg);
    auto bf = brute_force_maxcut(g);

    RoundingConfig rcfg{0.3, 1000, 600ULL + c};
    double best = 0.0;
    for (long t = 0; t < rcfg.trials; ++t) {
      auto out = round_once(g, solved.embedding, rcfg, t);
      if (out.final_value < out.initial_value - 1e-12) ++failures;
      best = std::max(best, out.final_value);
      if (t < 10 && !out.candidates.empty()) {
        std::vector<int> order = out.candidates;
        for (int rep = 0; rep < 3; ++rep) {
          std::shuffle(order.begin(), order.end(), shuffler);
          auto imp = local_improve(g, solved.embedding, out.gaussian,
                                   out.initial_cut, rcfg.epsilon, order);
          if (imp.cut.labels != out.final_cut.labels) ++failures;
        }
      }
    }
    if (best > bf.value + 1e-9) ++failures;
  }
  h.report(6, "local_improve monotone, order-free, below brute force",
           failures == 0,
           "failures=" + std::to_string(failures) +
               " elapsed=" + fmt(watch.seconds()) + "s");
}

// --------------------------------------------------------------------------
// 7. GW ratio on C5 and 20 random solved instances; alpha_gw and rho_star.
void criterion_7(Harness& h) {
  Stopwatch watch;
  int failures = 0;
  std::ostringstream detail;

  const double alpha = alpha_gw();
  if (!(std::abs(alpha - 0.878567) <= 1e-5)) ++failures;
  if (!(std::abs(rho_star() - (-0.689)) <= 1e-2)) ++failures;
  detail << "alpha=" << alpha << " rho*=" << rho_star() << " ";

  auto check_instance = [&](const WeightedGraph& g, const UnitEmbedding& v,
                            std::uint64_t seed) {
    const double sdp = sdp_objective(g, v);
    if (sdp <= 0.0) return;  // nothing to certify on an empty objective
    RoundingConfig rcfg{default_epsilon(v.dim()), 100000, seed};
    auto stats = rounding_trials(g, v, rcfg);
    const double sigma = stats.stderr_initial / sdp;
    if (!(stats.mean_initial / sdp >= alpha - 4.0 * sigma)) ++failures;
  };

  check_instance(cycle(5), c5_embedding(), 4000);

  std::mt19937_64 gen(2718);
  SolverConfig scfg;
  scfg.triangle_penalty = false;
  scfg.max_iters = 2000;
  for (int c = 0; c < 20; ++c) {
    const int n = 5 + static_cast<int>(gen() % 46);  // 5..50
    auto g = random_graph(n, 0.4, 3000 + c);
    if (g.edges().empty()) continue;
    scfg.seed = 70 + c;
    auto solved = solve_low_rank(g, 3, scfg);
    check_instance(g, solved.embedding, 4100 + c);
  }
  h.report(7, "mean initial cut / SDP >= alpha_GW - 4 sigma", failures == 0,
           detail.str() + "failures=" + std::to_string(failures) +
               " elapsed=" + fmt(watch.seconds()) + "s");
}

// --------------------------------------------------------------------------
// 8. Solver targets: K3 constrained optimum, C5 basic optimum, feasibility.
void criterion_8(Harness& h) {
  Stopwatch watch;
  auto k3 = solve_low_rank(triangle(), 2);
  const bool k3_obj = std::abs(k3.objective - 2.0) <= 1e-3;
  const bool k3_feas =
      check_feasibility(k3.embedding, 0.0, 1).worst_violation <= 1e-4;

  SolverConfig basic;
  basic.triangle_penalty = false;
  auto c5 = solve_low_rank(cycle(5), 2, basic);
  const bool c5_obj = c5.objective >= 4.52;
  // With the triangle constraints active the C5 value collapses to the max
  // cut (the 5-cycle inequality follows from the triple constraints), so the
  // 4.52 target is checked on the basic relaxation; shown for transparency:
  auto c5_tri = solve_low_rank(cycle(5), 2);

  std::ostringstream detail;
  detail << "K3 obj=" << k3.objective << " viol=" << k3.worst_violation
         << "; C5 basic obj=" << c5.objective
         << " (triangle-constrained obj=" << c5_tri.objective << ")"
         << " elapsed=" << fmt(watch.seconds()) << "s";
  h.report(8, "solver: K3 -> 2 +- 1e-3 (feasible), C5 basic -> >= 4.52",
           k3_obj && k3_feas && c5_obj, detail.str());
}

// --------------------------------------------------------------------------
// 9. Extremal identities: E_v E_g [X^2] = n and the cap tail bound.
void criterion_9(Harness& h) {
  Stopwatch watch;
  int failures = 0;
  std::ostringstream detail;
  for (auto [d, n] : {std::pair<int, int>{3, 10}, std::pair<int, int>{8, 20}}) {
    auto est = mean_second_moment_identity(d, n, 200, 10000, 8800 + d);
    const bool ok = std::abs(est.mean - n) <= 4.0 * est.std_error;
    if (!ok) ++failures;
    detail << "(d=" << d << ",n=" << n << "):mean=" << est.mean << " ";
  }
  for (int d : {2, 5, 10, 50}) {
    for (double a : {0.5, 0.7, 0.9}) {
      auto est = cap_tail_empirical(a, d, 200000, 9100 + d);
      if (!(est.frequency <= cap_tail_bound(a, d) + 4.0 * est.std_error))
        ++failures;
    }
  }
  h.report(9, "mean second-moment identity and cap tail grid", failures == 0,
           detail.str() + "failures=" + std::to_string(failures) +
               " elapsed=" + fmt(watch.seconds()) + "s");
}

// --------------------------------------------------------------------------
// 10. Declared non-reproducibility plus the constructed-instance margin.
void criterion_10(Harness& h) {
  Stopwatch watch;
  const int k = 12;
  auto g = star(k);
  Eigen::MatrixXd rows(k + 1, 2);
  rows.row(0) << 0.0, 1.0;
  for (int i = 1; i <= k; ++i) rows.row(i) << 1.0, 0.0;
  UnitEmbedding v(2, rows);

  RoundingConfig cfg{0.5, 100000, 424242};
  double sum_diff = 0.0, sum_diff_sq = 0.0;
  for (long t = 0; t < cfg.trials; ++t) {
    auto out = round_once(g, v, cfg, t);
    const double diff = out.final_value - out.initial_value;
    sum_diff += diff;
    sum_diff_sq += diff * diff;
  }
  const double m = static_cast<double>(cfg.trials);
  const double mean_diff = sum_diff / m;
  const double var =
      std::max(0.0, (sum_diff_sq - m * mean_diff * mean_diff) / (m - 1.0));
  const double sigma = std::sqrt(var / m);
  const double w = g.total_weight();

  const bool ok = mean_diff >= 4.0 * sigma && mean_diff >= 0.05 * w;
  std::printf("           note: the asymptotic 2^-O(d) improvement and the "
              "e^-Omega(d) upper-bound separation at n = floor(e^(d/100)) "
              "need d in the hundreds and are declared not desk-reproducible; "
              "the margin below is the substituted demonstration.\n");
  h.report(10, "local improvement beats plain GW by a measured margin", ok,
           "mean improvement=" + fmt(mean_diff) + " (" +
               fmt(mean_diff / w * 100.0) + "% of W, 4 sigma=" +
               fmt(4.0 * sigma) + ") elapsed=" + fmt(watch.seconds()) + "s");
}

}  // namespace

int main() {
  Harness h;
  criterion_1(h);
  criterion_2(h);
  criterion_3(h);
  criterion_4(h);
  criterion_5(h);
  criterion_6(h);
  criterion_7(h);
  criterion_8(h);
  criterion_9(h);
  criterion_10(h);
  if (h.failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criterion(s) FAILED\n", h.failures);
  return h.failures == 0 ? 0 : 1;
}
