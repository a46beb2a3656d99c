#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sdpcut/embedding.hpp"
#include "sdpcut/graph.hpp"

namespace sdpcut {

struct SolverConfig {
  int max_iters = 4000;
  double step0 = 0.5;
  double step_shrink = 0.5;
  double step_growth = 1.25;
  double min_step = 1e-12;
  double tol = 1e-10;  // relative improvement considered progress

  bool triangle_penalty = true;
  double mu0 = 1.0;
  double mu_growth = 2.0;
  double mu_max = 1e8;
  int mu_period = 40;      // double mu every this many iterations if infeasible
  double feas_tol = 1e-6;  // target worst triangle violation

  std::uint64_t seed = 1;
  // Exhaustive triple enumeration up to this many vertices; beyond it a
  // random subset of triples is penalized per iteration and the full check
  // runs once at the end.
  int exhaustive_limit = 200;
  int sampled_triples = 200000;
};

struct SolveResult {
  UnitEmbedding embedding;
  double objective = 0.0;
  double worst_violation = 0.0;
  int iterations = 0;
  bool converged = false;
  // (mu, penalized objective) after each accepted step; within a fixed mu the
  // penalized objective is non-decreasing.
  std::vector<std::pair<double, double>> trace;
};

/// Projected gradient ascent on the product of unit spheres (rows renormalized
/// after every step) for the low-rank SDP objective, with a quadratic penalty
/// on triangle violations whose weight doubles on a fixed schedule while the
/// iterate stays infeasible. Returns the best iterate: with the penalty
/// enabled, the highest objective among iterates within feas_tol of
/// feasibility (falling back to the final iterate); otherwise the highest
/// objective seen.
SolveResult solve_low_rank(const WeightedGraph& g, int d,
                           const SolverConfig& cfg = {},
                           const std::optional<UnitEmbedding>& initial = {});

}  // namespace sdpcut
