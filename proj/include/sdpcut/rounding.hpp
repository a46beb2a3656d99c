#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "sdpcut/embedding.hpp"
#include "sdpcut/graph.hpp"

namespace sdpcut {

struct RoundingConfig {
  double epsilon;  // candidate threshold; <= 0 disables local improvement
  long trials = 1;
  std::uint64_t seed = 0;
};

/// Default candidate threshold 2^(-3d).
double default_epsilon(int d);

/// x_i = sgn(<g, v_i>) with sgn(0) := +1.
Cut hyperplane_round(const UnitEmbedding& v, const Eigen::VectorXd& g);

/// S = { i : |<g, v_i>| < eps }.
std::vector<int> candidate_set(const UnitEmbedding& v, const Eigen::VectorXd& g,
                               double eps);

struct ImproveResult {
  Cut cut;
  std::vector<int> flipped;
  // (vertex, gain) for every candidate; gain = (2*sum_{B_i} w_ij - W_i)_+.
  std::vector<std::pair<int, double>> gains;
};

/// Local improvement over the candidate set. For each candidate i,
/// B_i = { j in N(i) : x_i x_j = 1 and |<g, v_j>| >= eps } is evaluated
/// against the labels of the input cut (never the evolving one), and i flips
/// iff sum_{B_i} w_ij > W_i / 2. All flips commute, so any processing order
/// gives the same output; `order`, when nonempty, fixes the order candidates
/// are visited in (used by the permutation tests).
ImproveResult local_improve(const WeightedGraph& g, const UnitEmbedding& v,
                            const Eigen::VectorXd& gauss, const Cut& x,
                            double eps, std::span<const int> order = {});

struct RoundingOutcome {
  Eigen::VectorXd gaussian;
  Cut initial_cut;
  std::vector<int> candidates;
  std::vector<int> flipped;
  Cut final_cut;
  double initial_value = 0.0;
  double final_value = 0.0;
  std::vector<std::pair<int, double>> gains;
};

/// One trial: Gaussian from (cfg.seed, trial_index), hyperplane rounding,
/// then local improvement. final_value >= initial_value always.
RoundingOutcome round_once(const WeightedGraph& g, const UnitEmbedding& v,
                           const RoundingConfig& cfg, long trial_index = 0);

struct TrialStats {
  long trials = 0;
  double mean_initial = 0.0;
  double mean_final = 0.0;
  double stderr_initial = 0.0;
  double stderr_final = 0.0;
  double mean_flips = 0.0;
  double best_value = 0.0;
  Cut best_cut;
};

/// When the output pointers are non-null, per-trial initial/final values are
/// collected as well.
TrialStats rounding_trials(const WeightedGraph& g, const UnitEmbedding& v,
                           const RoundingConfig& cfg,
                           std::vector<double>* initial_values = nullptr,
                           std::vector<double>* final_values = nullptr);

/// min over rho of (arccos(rho)/pi) / ((1-rho)/2), located to 1e-9.
double alpha_gw();
/// The minimizing correlation of that ratio.
double rho_star();
/// The ratio itself (value 1 at rho = -1 by continuity of the quotient).
double gw_ratio(double rho);

struct ConditionalGain {
  long candidate_trials = 0;  // trials with i in S
  double mean_gain = 0.0;     // E[Delta_i | i in S]
  double normalized = 0.0;    // mean_gain / W_i (0 when W_i = 0)
  bool has_data = false;
};

/// Monte Carlo estimate of the expected local gain conditioned on candidacy.
std::vector<ConditionalGain> conditional_gain_experiment(
    const WeightedGraph& g, const UnitEmbedding& v, const RoundingConfig& cfg);

}  // namespace sdpcut
