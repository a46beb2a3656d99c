#include "sdpcut/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdpcut/rng.hpp"

namespace sdpcut {

double default_epsilon(int d) { return std::ldexp(1.0, -3 * d); }

Cut hyperplane_round(const UnitEmbedding& v, const Eigen::VectorXd& g) {
  if (g.size() != v.dim())
    throw std::invalid_argument("gaussian dimension does not match embedding");
  const Eigen::VectorXd proj = v.rows() * g;
  Cut x;
  x.labels.resize(v.size());
  for (int i = 0; i < v.size(); ++i) x.labels[i] = proj(i) >= 0.0 ? 1 : -1;
  return x;
}

std::vector<int> candidate_set(const UnitEmbedding& v, const Eigen::VectorXd& g,
                               double eps) {
  if (g.size() != v.dim())
    throw std::invalid_argument("gaussian dimension does not match embedding");
  const Eigen::VectorXd proj = v.rows() * g;
  std::vector<int> s;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(proj(i)) < eps) s.push_back(i);
  return s;
}

ImproveResult local_improve(const WeightedGraph& g, const UnitEmbedding& v,
                            const Eigen::VectorXd& gauss, const Cut& x,
                            double eps, std::span<const int> order) {
  if (x.size() != g.num_vertices() || v.size() != g.num_vertices())
    throw std::invalid_argument("size mismatch");
  const Eigen::VectorXd proj = v.rows() * gauss;

  std::vector<int> candidates = candidate_set(v, gauss, eps);
  std::vector<int> visit(candidates.begin(), candidates.end());
  if (!order.empty()) {
    std::vector<int> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != candidates)  // candidate_set is already ascending
      throw std::invalid_argument("order must be a permutation of the candidate set");
    visit.assign(order.begin(), order.end());
  }

  ImproveResult result;
  result.cut = x;
  for (int i : visit) {
    // B_i against the original labels; flips never interact because B_i
    // contains non-candidates only.
    double b_weight = 0.0;
    for (const auto& [j, w] : g.neighbors(i))
      if (x.labels[i] == x.labels[j] && std::abs(proj(j)) >= eps) b_weight += w;
    const double wi = g.vertex_weight(i);
    const double gain = std::max(0.0, 2.0 * b_weight - wi);
    result.gains.emplace_back(i, gain);
    if (b_weight > wi / 2.0) {
      result.cut.labels[i] = -x.labels[i];
      result.flipped.push_back(i);
    }
  }
  return result;
}

RoundingOutcome round_once(const WeightedGraph& g, const UnitEmbedding& v,
                           const RoundingConfig& cfg, long trial_index) {
  GaussianSampler rng(derive_seed(cfg.seed, seed_salt::trial,
                                  static_cast<std::uint64_t>(trial_index)));
  RoundingOutcome out;
  out.gaussian = rng.vector(v.dim());
  out.initial_cut = hyperplane_round(v, out.gaussian);
  out.candidates = candidate_set(v, out.gaussian, cfg.epsilon);
  ImproveResult imp =
      local_improve(g, v, out.gaussian, out.initial_cut, cfg.epsilon);
  out.final_cut = std::move(imp.cut);
  out.flipped = std::move(imp.flipped);
  out.gains = std::move(imp.gains);
  out.initial_value = cut_value(g, out.initial_cut);
  out.final_value = cut_value(g, out.final_cut);
  return out;
}

TrialStats rounding_trials(const WeightedGraph& g, const UnitEmbedding& v,
                           const RoundingConfig& cfg,
                           std::vector<double>* initial_values,
                           std::vector<double>* final_values) {
  if (cfg.trials <= 0) throw std::invalid_argument("trials must be positive");
  TrialStats stats;
  stats.trials = cfg.trials;
  double sum_i = 0.0, sum_i2 = 0.0, sum_f = 0.0, sum_f2 = 0.0, flips = 0.0;
  double best = -1.0;
  for (long t = 0; t < cfg.trials; ++t) {
    RoundingOutcome out = round_once(g, v, cfg, t);
    if (initial_values) initial_values->push_back(out.initial_value);
    if (final_values) final_values->push_back(out.final_value);
    sum_i += out.initial_value;
    sum_i2 += out.initial_value * out.initial_value;
    sum_f += out.final_value;
    sum_f2 += out.final_value * out.final_value;
    flips += static_cast<double>(out.flipped.size());
    if (out.final_value > best) {
      best = out.final_value;
      stats.best_cut = out.final_cut;
    }
  }
  const double n = static_cast<double>(cfg.trials);
  stats.mean_initial = sum_i / n;
  stats.mean_final = sum_f / n;
  stats.mean_flips = flips / n;
  stats.best_value = best;
  if (cfg.trials > 1) {
    const double var_i =
        std::max(0.0, (sum_i2 - n * stats.mean_initial * stats.mean_initial) /
                          (n - 1.0));
    const double var_f = std::max(
        0.0, (sum_f2 - n * stats.mean_final * stats.mean_final) / (n - 1.0));
    stats.stderr_initial = std::sqrt(var_i / n);
    stats.stderr_final = std::sqrt(var_f / n);
  }
  return stats;
}

double gw_ratio(double rho) {
  if (rho >= 1.0) return 1.0;  // limit of the quotient as rho -> 1
  return (std::acos(rho) / M_PI) / ((1.0 - rho) / 2.0);
}

namespace {

// Golden-section minimum of gw_ratio on [-1, 0].
double minimize_ratio(double* arg_min) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -1.0, b = 0.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = gw_ratio(c), fd = gw_ratio(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = gw_ratio(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = gw_ratio(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (arg_min) *arg_min = x;
  return gw_ratio(x);
}

}  // namespace

double alpha_gw() {
  static const double value = minimize_ratio(nullptr);
  return value;
}

double rho_star() {
  static const double value = [] {
    double x;
    minimize_ratio(&x);
    return x;
  }();
  return value;
}

std::vector<ConditionalGain> conditional_gain_experiment(
    const WeightedGraph& g, const UnitEmbedding& v, const RoundingConfig& cfg) {
  std::vector<ConditionalGain> per_vertex(g.num_vertices());
  std::vector<double> gain_sum(g.num_vertices(), 0.0);
  for (long t = 0; t < cfg.trials; ++t) {
    RoundingOutcome out = round_once(g, v, cfg, t);
    for (const auto& [i, gain] : out.gains) {
      ++per_vertex[i].candidate_trials;
      gain_sum[i] += gain;
    }
  }
  for (int i = 0; i < g.num_vertices(); ++i) {
    auto& c = per_vertex[i];
    c.has_data = c.candidate_trials > 0;
    if (c.has_data) {
      c.mean_gain = gain_sum[i] / static_cast<double>(c.candidate_trials);
      const double wi = g.vertex_weight(i);
      c.normalized = wi > 0.0 ? c.mean_gain / wi : 0.0;
    }
  }
  return per_vertex;
}

}  // namespace sdpcut
