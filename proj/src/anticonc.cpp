#include "sdpcut/anticonc.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "sdpcut/rng.hpp"

namespace sdpcut {

namespace {
constexpr double kClampTol = 1e-12;
constexpr long kMcShard = 8192;

double clamp_rho(double rho) {
  if (rho > 1.0) {
    if (rho > 1.0 + kClampTol)
      throw std::invalid_argument("inner product exceeds 1 beyond tolerance");
    return 1.0;
  }
  if (rho < -1.0) {
    if (rho < -1.0 - kClampTol)
      throw std::invalid_argument("inner product below -1 beyond tolerance");
    return -1.0;
  }
  return rho;
}

// sign(rho) * |rho|^p without a pow loop.
double signed_power(double rho, int p) {
  if (rho == 0.0) return 0.0;
  const double mag = std::exp(p * std::log(std::abs(rho)));
  return (rho < 0.0 && (p & 1)) ? -mag : mag;
}
}  // namespace

SignConfiguration::SignConfiguration(UnitEmbedding embedding,
                                     std::vector<double> weights)
    : embedding_(std::move(embedding)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != embedding_.size())
    throw std::invalid_argument("weight count does not match vector count");
  for (double w : weights_)
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
}

SignConfiguration SignConfiguration::unweighted(UnitEmbedding embedding) {
  std::vector<double> ones(embedding.size(), 1.0);
  return SignConfiguration(std::move(embedding), std::move(ones));
}

double SignConfiguration::total_weight() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

const Eigen::MatrixXd& SignConfiguration::gram() const {
  if (gram_.size() == 0) gram_ = embedding_.gram();
  return gram_;
}

double SignConfiguration::min_offdiag_rho() const {
  const auto& g = gram();
  double lowest = 1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = i + 1; j < g.cols(); ++j)
      lowest = std::min(lowest, g(i, j));
  return lowest;
}

double sheppard(double rho) { return 2.0 / M_PI * std::asin(clamp_rho(rho)); }

double exact_second_moment(const SignConfiguration& cfg) {
  const auto& gram = cfg.gram();
  const auto& w = cfg.weights();
  const int n = cfg.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += w[i] * w[i] * std::asin(clamp_rho(gram(i, i)));
    for (int j = i + 1; j < n; ++j)
      total += 2.0 * w[i] * w[j] * std::asin(clamp_rho(gram(i, j)));
  }
  return 2.0 / M_PI * total;
}

McEstimate mc_second_moment(const SignConfiguration& cfg, long samples,
                            std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("samples must be positive");
  const int n = cfg.size();
  const int d = cfg.dim();
  Eigen::Map<const Eigen::VectorXd> w(cfg.weights().data(), n);

  double sum = 0.0, sum_sq = 0.0;
  long done = 0;
  for (long shard = 0; done < samples; ++shard) {
    const long count = std::min<long>(kMcShard, samples - done);
    GaussianSampler rng(derive_seed(seed, seed_salt::mc_shard,
                                    static_cast<std::uint64_t>(shard)));
    Eigen::MatrixXd g(d, count);
    for (long s = 0; s < count; ++s)
      for (int c = 0; c < d; ++c) g(c, s) = rng.next();
    // Signs of the projections, then the weighted column sums.
    Eigen::MatrixXd proj = cfg.embedding().rows() * g;  // n x count
    Eigen::ArrayXXd signs =
        (proj.array() >= 0.0).select(Eigen::ArrayXXd::Constant(n, count, 1.0),
                                     Eigen::ArrayXXd::Constant(n, count, -1.0));
    Eigen::VectorXd x = signs.matrix().transpose() * w;
    sum += x.array().square().sum();
    sum_sq += x.array().square().square().sum();
    done += count;
  }
  McEstimate est;
  est.samples = samples;
  const double m = static_cast<double>(samples);
  est.estimate = sum / m;
  if (samples > 1) {
    const double var =
        std::max(0.0, (sum_sq - m * est.estimate * est.estimate) / (m - 1.0));
    est.std_error = std::sqrt(var / m);
  }
  return est;
}

double arcsin_coeff(int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  // (2k)! / (4^k (k!)^2) = prod_{i<=k} (2i-1)/(2i), stable as a product.
  double central = 1.0;
  for (int i = 1; i <= k; ++i)
    central *= (2.0 * i - 1.0) / (2.0 * i);
  return central / (2.0 * k + 1.0);
}

double power_sum(const SignConfiguration& cfg, int p) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  const auto& gram = cfg.gram();
  const auto& w = cfg.weights();
  const int n = cfg.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += w[i] * w[i] * signed_power(clamp_rho(gram(i, i)), p);
    for (int j = i + 1; j < n; ++j)
      total += 2.0 * w[i] * w[j] * signed_power(clamp_rho(gram(i, j)), p);
  }
  return total;
}

double net_constant() { return std::log(2.0 * 21.0 * 21.0) / std::log(0.98 / 0.9); }

int net_p(int d) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  return 2 * static_cast<int>(std::ceil(net_constant() * d)) + 1;
}

namespace {
MomentCertificate make_certificate(const SignConfiguration& cfg, int p,
                                   double floor) {
  MomentCertificate cert;
  cert.p = p;
  cert.coeff = arcsin_coeff((p - 1) / 2);
  cert.sp = power_sum(cfg, p);
  cert.implied_lower_bound = 2.0 / M_PI * cert.coeff * cert.sp;
  cert.guaranteed_sp_floor = floor;
  cert.floor_holds = cert.sp >= floor * (1.0 - 1e-12) - 1e-12;
  return cert;
}
}  // namespace

MomentCertificate net_certificate(const SignConfiguration& cfg) {
  const int p = net_p(cfg.dim());
  const double w = cfg.total_weight();
  const double floor = w * w * std::exp(p * std::log(0.9));
  return make_certificate(cfg, p, floor);
}

MomentCertificate matrix_certificate(const SignConfiguration& cfg) {
  const int d = cfg.dim();
  const int p = 100 * d + 1;
  const double w = cfg.total_weight();
  const double floor = w * w * std::exp2(-(9.0 * d + 2.0));
  return make_certificate(cfg, p, floor);
}

PsdSumCheck psd_sum_check(const Eigen::MatrixXd& a, int rank_bound,
                          double delta, double tol) {
  PsdSumCheck check;
  const Eigen::Index n = a.rows();
  if (n != a.cols() || n == 0) {
    check.precondition_failure = "matrix must be square and nonempty";
    return check;
  }
  if (!a.isApprox(a.transpose(), tol)) {
    check.precondition_failure = "matrix is not symmetric";
    return check;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(a(i, i) - 1.0) > tol) {
      check.precondition_failure = "diagonal entries must be 1";
      return check;
    }
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && a(i, j) < -delta - tol) {
        check.precondition_failure = "off-diagonal entry below -delta";
        return check;
      }
  }
  if (delta < 0.0 || delta * rank_bound > 0.5) {
    check.precondition_failure = "delta * D must be at most 1/2";
    return check;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmax = std::max(1.0, ev.maxCoeff());
  if (ev.minCoeff() < -tol * lmax) {
    check.precondition_failure = "matrix is not PSD within tolerance";
    return check;
  }
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * lmax) ++rank;
  if (rank > rank_bound) {
    check.precondition_failure = "numeric rank exceeds D";
    return check;
  }
  check.preconditions_ok = true;
  check.lhs = a.sum();
  check.rhs = static_cast<double>(n) * static_cast<double>(n) /
              (2.0 * (rank_bound + 1.0));
  check.holds = check.lhs >= check.rhs - 1e-9 * std::abs(check.rhs);
  return check;
}

HadamardRankCheck hadamard_rank_check(const UnitEmbedding& v, int p,
                                      double rank_tol, double psd_tol) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  const int d = v.dim();
  Eigen::MatrixXd m = v.gram();
  Eigen::MatrixXd hp = m.array().pow(p).matrix();
  // C(d+p-1, p) through lgamma; exact for the modest sizes used here.
  const double bound = std::round(std::exp(
      std::lgamma(d + p) - std::lgamma(p + 1.0) - std::lgamma(d + 0.0)));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hp, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmax = std::max(1.0, ev.maxCoeff());
  HadamardRankCheck check;
  check.binomial_bound = bound;
  check.min_eigenvalue = ev.minCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > rank_tol * lmax) ++check.numeric_rank;
  check.rank_ok = check.numeric_rank <= bound;
  check.psd_ok = check.min_eigenvalue >= -psd_tol;
  return check;
}

LowerBoundReport lower_bound_report(const SignConfiguration& cfg,
                                         int p_max) {
  const int d = cfg.dim();
  if (p_max <= 0)
    p_max = std::min(2 * static_cast<int>(std::ceil(80.0 * d)) + 1, 1001);

  LowerBoundReport report;
  report.exact = exact_second_moment(cfg);
  report.min_rho = cfg.size() > 1 ? cfg.min_offdiag_rho() : 1.0;
  report.admissible = report.min_rho >= -0.9;
  report.net = net_certificate(cfg);
  report.matrix = matrix_certificate(cfg);

  report.best_termwise = -std::numeric_limits<double>::infinity();
  for (int p = 1; p <= p_max; p += 2) {
    const double bound = 2.0 / M_PI * arcsin_coeff((p - 1) / 2) * power_sum(cfg, p);
    if (bound > report.best_termwise) {
      report.best_termwise = bound;
      report.best_p = p;
    }
  }
  const double slop = 1e-9 * (1.0 + std::abs(report.exact));
  report.exact_dominates = report.exact >= report.best_termwise - slop &&
                           report.exact >= report.net.implied_lower_bound - slop &&
                           report.exact >= report.matrix.implied_lower_bound - slop;
  return report;
}

}  // namespace sdpcut
