#include "sdpcut/extremal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdpcut/rng.hpp"

namespace sdpcut {

UnitEmbedding sample_sphere(int n, int d, std::uint64_t seed) {
  if (n < 0 || d < 1) throw std::invalid_argument("need n >= 0 and d >= 1");
  GaussianSampler rng(derive_seed(seed, seed_salt::sphere, 0));
  Eigen::MatrixXd rows(n, d);
  for (int i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int c = 0; c < d; ++c) rows(i, c) = rng.next();
      norm = rows.row(i).norm();
    } while (norm == 0.0);
    rows.row(i) /= norm;
  }
  return UnitEmbedding(d, std::move(rows));
}

double cap_tail_bound(double a, int d) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("need 0 < a < 1");
  if (d < 1) throw std::invalid_argument("need d >= 1");
  return std::pow(1.0 - a * a, (d - 1) / 2.0);
}

CapTailEstimate cap_tail_empirical(double a, int d, long pairs,
                                   std::uint64_t seed) {
  if (pairs <= 0) throw std::invalid_argument("pairs must be positive");
  GaussianSampler rng(derive_seed(seed, seed_salt::sphere, 1));
  long hits = 0;
  Eigen::VectorXd u(d), v(d);
  for (long s = 0; s < pairs; ++s) {
    double nu = 0.0, nv = 0.0;
    do {
      u = rng.vector(d);
      nu = u.norm();
    } while (nu == 0.0);
    do {
      v = rng.vector(d);
      nv = v.norm();
    } while (nv == 0.0);
    if (u.dot(v) / (nu * nv) >= a) ++hits;
  }
  CapTailEstimate est;
  est.pairs = pairs;
  est.frequency = static_cast<double>(hits) / static_cast<double>(pairs);
  est.std_error = std::sqrt(
      std::max(est.frequency * (1.0 - est.frequency), 1.0 / pairs) / pairs);
  return est;
}

MeanSecondMoment mean_second_moment_identity(int d, int n, int configs,
                                             long mc_samples,
                                             std::uint64_t seed) {
  if (configs <= 0) throw std::invalid_argument("configs must be positive");
  double sum = 0.0, sum_sq = 0.0;
  for (int c = 0; c < configs; ++c) {
    const std::uint64_t sub = derive_seed(seed, seed_salt::config, c);
    auto cfg = SignConfiguration::unweighted(sample_sphere(n, d, sub));
    const double est =
        mc_second_moment(cfg, mc_samples, splitmix64(sub)).estimate;
    sum += est;
    sum_sq += est * est;
  }
  MeanSecondMoment out;
  out.configs = configs;
  const double m = static_cast<double>(configs);
  out.mean = sum / m;
  if (configs > 1) {
    const double var = std::max(0.0, (sum_sq - m * out.mean * out.mean) / (m - 1.0));
    out.std_error = std::sqrt(var / m);
  }
  return out;
}

FlatConfigResult find_flat_configuration(const ExtremalSearchConfig& cfg) {
  if (cfg.n < 1 || cfg.d < 1) throw std::invalid_argument("need n, d >= 1");
  FlatConfigResult best{UnitEmbedding(1, Eigen::MatrixXd::Ones(1, 1)), 0.0,
                        0.0, 0.0, 0, false};
  bool have_candidate = false;
  bool best_admissible = false;
  const double n2 = static_cast<double>(cfg.n) * cfg.n;
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    UnitEmbedding v =
        sample_sphere(cfg.n, cfg.d, derive_seed(cfg.seed, seed_salt::sphere,
                                                1000 + attempt));
    auto sc = SignConfiguration::unweighted(v);
    const double min_rho = cfg.n > 1 ? sc.min_offdiag_rho() : 1.0;
    const double exact = exact_second_moment(sc);
    const bool admissible = min_rho >= -0.9;
    const bool better = !have_candidate ||
                        (admissible && !best_admissible) ||
                        (admissible == best_admissible && exact < best.exact);
    if (better) {
      best = {std::move(v), exact, exact / n2, min_rho, attempt + 1, false};
      have_candidate = true;
      best_admissible = admissible;
    }
    if (admissible && exact <= 2.0 * cfg.n) {
      best.success = true;
      best.attempts = attempt + 1;
      return best;
    }
  }
  best.attempts = cfg.max_retries;
  return best;
}

}  // namespace sdpcut
