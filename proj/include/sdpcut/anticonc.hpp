#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdpcut/embedding.hpp"

namespace sdpcut {

/// Unit vectors plus nonnegative per-vector weights; the object whose sign
/// sum X = sum_i w_i sgn(<g, v_i>) is studied.
class SignConfiguration {
 public:
  SignConfiguration(UnitEmbedding embedding, std::vector<double> weights);
  static SignConfiguration unweighted(UnitEmbedding embedding);

  const UnitEmbedding& embedding() const { return embedding_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return embedding_.size(); }
  int dim() const { return embedding_.dim(); }
  double total_weight() const;
  /// Gram matrix, computed on first use.
  const Eigen::MatrixXd& gram() const;
  double min_offdiag_rho() const;

 private:
  UnitEmbedding embedding_;
  std::vector<double> weights_;
  mutable Eigen::MatrixXd gram_;  // cached
};

/// E[sgn(Y) sgn(Z)] = (2/pi) arcsin(rho) for unit-variance correlation rho.
double sheppard(double rho);

/// (2/pi) * sum_{i,j} w_i w_j arcsin(rho_ij). Gram entries within 1e-12 of
/// +-1 are clamped; anything farther outside [-1,1] is an error.
double exact_second_moment(const SignConfiguration& cfg);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Mean of X^2 over independent Gaussians; sampling is sharded with
/// sub-seeds so the result depends only on (seed, shard layout).
McEstimate mc_second_moment(const SignConfiguration& cfg, long samples,
                            std::uint64_t seed);

/// Taylor coefficient of arcsin: c_k = (2k)! / (4^k (k!)^2 (2k+1)).
double arcsin_coeff(int k);

/// S_p = sum_{i,j} w_i w_j rho_ij^p. Powers go through sign * exp(p*log|rho|)
/// so large p cannot accumulate pow-loop error; underflow to 0 is harmless.
double power_sum(const SignConfiguration& cfg, int p);

struct MomentCertificate {
  int p = 0;
  double coeff = 0.0;     // c_{(p-1)/2}
  double sp = 0.0;        // S_p evaluated on the configuration
  double implied_lower_bound = 0.0;  // (2/pi) * coeff * sp <= E[X^2]
  double guaranteed_sp_floor = 0.0;  // floor valid when min rho >= -0.9
  bool floor_holds = false;
};

/// The epsilon-net constant ln(2*21^2)/ln(0.98/0.9).
double net_constant();
/// p = 2*ceil(c*d) + 1 for the net certificate.
int net_p(int d);

/// Certificate at the net exponent; floor is W^2 * 0.9^p.
MomentCertificate net_certificate(const SignConfiguration& cfg);

/// Certificate at p = 100d + 1; floor is W^2 / 2^(9d+2).
MomentCertificate matrix_certificate(const SignConfiguration& cfg);

struct PsdSumCheck {
  bool preconditions_ok = false;
  std::string precondition_failure;
  double lhs = 0.0;  // sum_ij A_ij
  double rhs = 0.0;  // n^2 / (2(D+1))
  bool holds = false;
};

/// Verifies sum_ij A_ij >= n^2/(2(D+1)) for a PSD unit-diagonal matrix with
/// rank <= D, off-diagonal >= -delta and delta*D <= 1/2. Precondition
/// violations are reported, not asserted.
PsdSumCheck psd_sum_check(const Eigen::MatrixXd& a, int rank_bound,
                          double delta, double tol = 1e-9);

struct HadamardRankCheck {
  int numeric_rank = 0;
  double binomial_bound = 0.0;  // C(d+p-1, p)
  double min_eigenvalue = 0.0;
  bool rank_ok = false;
  bool psd_ok = false;
};

/// Numeric rank and PSD-ness of the entrywise p-th power of the Gram matrix,
/// against the symmetric-tensor dimension bound.
HadamardRankCheck hadamard_rank_check(const UnitEmbedding& v, int p,
                                      double rank_tol = 1e-9,
                                      double psd_tol = 1e-8);

struct LowerBoundReport {
  double exact = 0.0;
  double min_rho = 0.0;
  bool admissible = false;  // min off-diagonal rho >= -0.9
  MomentCertificate net;
  MomentCertificate matrix;
  int best_p = 1;
  double best_termwise = 0.0;  // max over odd p of (2/pi) c_(p-1)/2 S_p
  bool exact_dominates = false;
};

/// Exact second moment against every certificate; p_max 0 means the default
/// min(2*ceil(80 d)+1, 1001).
LowerBoundReport lower_bound_report(const SignConfiguration& cfg,
                                         int p_max = 0);

}  // namespace sdpcut
