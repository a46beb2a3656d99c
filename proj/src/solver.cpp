#include "sdpcut/solver.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "sdpcut/rng.hpp"

namespace sdpcut {

namespace {

struct Triple {
  int i, j, k;  // j is the middle vertex
};

struct PenaltyStats {
  double sum_sq = 0.0;
  double worst = 0.0;
};

void normalize_rows(Eigen::MatrixXd& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0.0) rows.row(i) /= norm;
    else rows(i, 0) = 1.0;
  }
}

double objective_of(const WeightedGraph& g, const Eigen::MatrixXd& rows) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    total += e.w * (1.0 - rows.row(e.u).dot(rows.row(e.v)));
  return 0.5 * total;
}

// Accumulates slack statistics for the four sign patterns of one middle
// choice; when grad is non-null also adds the penalty ascent direction
// 2*mu*violation*ds/dv for each violated pattern.
void scan_triple(const Eigen::MatrixXd& rows, const Triple& t, double mu,
                 PenaltyStats& stats, Eigen::MatrixXd* grad) {
  const auto vi = rows.row(t.i);
  const auto vj = rows.row(t.j);
  const auto vk = rows.row(t.k);
  const double rij = vi.dot(vj);
  const double rjk = vj.dot(vk);
  const double rik = vi.dot(vk);
  for (int b1 = -1; b1 <= 1; b1 += 2) {
    for (int b2 = -1; b2 <= 1; b2 += 2) {
      const double slack = 1.0 - b1 * rij - b2 * rjk + b1 * b2 * rik;
      if (slack >= 0.0) continue;
      const double viol = -slack;
      stats.sum_sq += viol * viol;
      if (viol > stats.worst) stats.worst = viol;
      if (grad) {
        const double c = 2.0 * mu * viol;
        grad->row(t.i) += c * (-b1 * vj + b1 * b2 * vk);
        grad->row(t.j) += c * (-b1 * vi - b2 * vk);
        grad->row(t.k) += c * (-b2 * vj + b1 * b2 * vi);
      }
    }
  }
}

void for_each_triple(int n, const std::vector<Triple>& sampled,
                     const std::function<void(const Triple&)>& fn) {
  if (!sampled.empty()) {
    for (const Triple& t : sampled) fn(t);
    return;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        fn({a, b, c});
        fn({b, a, c});
        fn({a, c, b});
      }
}

}  // namespace

SolveResult solve_low_rank(const WeightedGraph& g, int d,
                           const SolverConfig& cfg,
                           const std::optional<UnitEmbedding>& initial) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const int n = g.num_vertices();

  Eigen::MatrixXd rows;
  if (initial) {
    if (initial->size() != n || initial->dim() != d)
      throw std::invalid_argument("initial embedding has wrong shape");
    rows = initial->rows();
  } else {
    GaussianSampler rng(derive_seed(cfg.seed, seed_salt::solver, 0));
    rows.resize(n, d);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < d; ++c) rows(i, c) = rng.next();
    normalize_rows(rows);
  }

  const bool use_penalty = cfg.triangle_penalty && n >= 3;
  const bool exhaustive = n <= cfg.exhaustive_limit;
  GaussianSampler triple_rng(derive_seed(cfg.seed, seed_salt::solver, 1));
  auto sample_triples = [&]() {
    std::vector<Triple> v;
    if (exhaustive || !use_penalty) return v;
    v.reserve(cfg.sampled_triples);
    for (int s = 0; s < cfg.sampled_triples; ++s) {
      int i = static_cast<int>(triple_rng.raw() % n);
      int j = static_cast<int>(triple_rng.raw() % n);
      int k = static_cast<int>(triple_rng.raw() % n);
      if (i == j || j == k || i == k) continue;
      v.push_back({i, j, k});
    }
    return v;
  };

  double mu = use_penalty ? cfg.mu0 : 0.0;
  std::vector<Triple> tri = sample_triples();

  auto evaluate = [&](const Eigen::MatrixXd& r, PenaltyStats* out_stats) {
    const double obj = objective_of(g, r);
    PenaltyStats stats;
    if (use_penalty)
      for_each_triple(n, tri, [&](const Triple& t) {
        scan_triple(r, t, 0.0, stats, nullptr);
      });
    if (out_stats) *out_stats = stats;
    return obj - mu * stats.sum_sq;
  };

  SolveResult result{UnitEmbedding(d, Eigen::MatrixXd::Ones(0, d)), 0.0, 0.0,
                     0, false, {}};
  double best_obj = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_rows;
  auto consider_best = [&](const Eigen::MatrixXd& r) {
    PenaltyStats s;
    evaluate(r, &s);
    const bool qualifies = !use_penalty || s.worst <= cfg.feas_tol;
    const double obj = objective_of(g, r);
    if (qualifies && obj > best_obj) {
      best_obj = obj;
      best_rows = r;
    }
  };

  PenaltyStats stats;
  double f_cur = evaluate(rows, &stats);
  consider_best(rows);

  // One greedy pass of single-row sign flips; breaks symmetric configurations
  // that the (row-synchronous) gradient step cannot, e.g. at d = 1.
  auto sign_flip_sweep = [&]() {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      rows.row(i) = -rows.row(i);
      const double f_try = evaluate(rows, nullptr);
      if (f_try > f_cur + 1e-12 * (1.0 + std::abs(f_cur))) {
        f_cur = f_try;
        improved = true;
      } else {
        rows.row(i) = -rows.row(i);
      }
    }
    return improved;
  };

  double eta = cfg.step0;
  int small_streak = 0;
  int iter = 0;
  int since_mu_bump = 0;
  for (; iter < cfg.max_iters; ++iter) {
    // Fixed penalty schedule: double mu every mu_period iterations while the
    // worst violation is still above the feasibility target.
    if (use_penalty && ++since_mu_bump >= cfg.mu_period && mu < cfg.mu_max) {
      PenaltyStats s;
      evaluate(rows, &s);
      if (s.worst > cfg.feas_tol) {
        mu = std::min(mu * cfg.mu_growth, cfg.mu_max);
        f_cur = evaluate(rows, nullptr);
        small_streak = 0;
      }
      since_mu_bump = 0;
    }

    // Ascent direction: objective gradient plus penalty pushback.
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, d);
    for (const Edge& e : g.edges()) {
      grad.row(e.u) -= 0.5 * e.w * rows.row(e.v);
      grad.row(e.v) -= 0.5 * e.w * rows.row(e.u);
    }
    if (use_penalty) {
      PenaltyStats unused;
      for_each_triple(n, tri, [&](const Triple& t) {
        scan_triple(rows, t, mu, unused, &grad);
      });
    }
    const double gnorm = grad.norm();
    if (gnorm > 0.0) grad /= gnorm;

    auto attempt = [&](double step, Eigen::MatrixXd& out) {
      out = rows + step * grad;
      normalize_rows(out);
      return evaluate(out, nullptr);
    };

    // Backtrack from eta; if that fails, probe upward (renormalization can
    // make small steps no-ops, e.g. sign flips at d = 1 need a large step).
    const double imp_floor = cfg.tol * (1.0 + std::abs(f_cur));
    bool accepted = false;
    Eigen::MatrixXd next;
    double f_next = f_cur;
    double step = eta;
    for (int tries = 0; tries < 48 && step >= cfg.min_step; ++tries) {
      f_next = attempt(step, next);
      if (f_next > f_cur + imp_floor) {
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) {
      step = eta;
      for (int tries = 0; tries < 24; ++tries) {
        step *= 2.0;
        f_next = attempt(step, next);
        if (f_next > f_cur + imp_floor) {
          accepted = true;
          break;
        }
      }
    }

    if (accepted) {
      const double gain = f_next - f_cur;
      rows.swap(next);
      f_cur = f_next;
      eta = std::min(step * cfg.step_growth, 4.0);
      result.trace.emplace_back(mu, f_cur);
      consider_best(rows);
      small_streak = (gain < 100.0 * imp_floor) ? small_streak + 1 : 0;
    }

    if (!accepted || small_streak >= 12) {
      PenaltyStats s;
      evaluate(rows, &s);
      if (use_penalty && s.worst > cfg.feas_tol && mu < cfg.mu_max) {
        mu = std::min(mu * cfg.mu_growth, cfg.mu_max);
        f_cur = evaluate(rows, nullptr);
        eta = std::max(eta, 0.05 * cfg.step0);
        small_streak = 0;
        since_mu_bump = 0;
        continue;
      }
      if (sign_flip_sweep()) {
        consider_best(rows);
        small_streak = 0;
        eta = std::max(eta, 0.05 * cfg.step0);
        continue;
      }
      result.converged = true;
      ++iter;
      break;
    }
  }

  const Eigen::MatrixXd& final_rows = best_rows.size() > 0 ? best_rows : rows;
  Eigen::MatrixXd out = final_rows;
  normalize_rows(out);
  result.embedding = UnitEmbedding(d, std::move(out));
  result.objective = objective_of(g, result.embedding.rows());
  result.worst_violation =
      (n >= 3) ? check_feasibility(result.embedding, 0.0, 1).worst_violation
               : 0.0;
  result.iterations = iter;
  return result;
}

}  // namespace sdpcut
