#pragma once

#include <vector>

namespace sdpcut {

/// Gegenbauer (ultraspherical) polynomials P_k for the sphere S^{d-1},
/// normalized so P_k(1) = 1, with weight exponent w = (d-3)/2 and
/// recurrence parameter lambda = (d-2)/2. Requires d >= 3 so w >= 0.
class GegenbauerBasis {
 public:
  explicit GegenbauerBasis(int d);

  int dim() const { return d_; }
  double weight_exponent() const { return w_; }  // w = (d-3)/2
  double lambda() const { return lambda_; }      // (d-2)/2
  /// Normalization constant of the measure dsigma = c_d (1-t^2)^w dt.
  double measure_constant() const;

  /// P_k(t) by the three-term recurrence, post-normalized by the value at 1.
  double eval(int k, double t) const;

 private:
  int d_;
  double w_;
  double lambda_;
};

/// ||P_k||^2 = int P_k(t)^2 dsigma(t). The projections below are raw inner
/// products, so reconstructing a function from them divides by this.
double gegenbauer_norm_sq(const GegenbauerBasis& basis, int k);

/// I_k(A) = int_{-1}^{1} (1-t)^A P_k(t) dsigma(t), in closed form via
/// log-Gamma arithmetic: zero for k > A, sign (-1)^k otherwise.
double I_closed(const GegenbauerBasis& basis, int k, int A);

/// The same integral by a Gauss-Gegenbauer rule whose order is raised until
/// two consecutive evaluations agree to rel_tol (absolute 1e-14 near zero);
/// sums run in extended precision so heavy cancellation at large A and k is
/// resolved. Independent oracle for I_closed.
double I_quadrature(const GegenbauerBasis& basis, int k, int A,
                    double rel_tol = 1e-8);

/// |I_k(A+1)| / |I_k(A)| = 2 ((A+1)/(A+1-k)) ((A+w+1)/(A+k+2w+2)), k <= A.
double ik_ratio(int d, int k, int A);
/// The k = 0 minimum of the ratio, 2(A+w+1)/(A+2w+2); defined for d >= 2.
double ik_ratio_min(int d, int A);
/// Ratio for k = 0..A; strictly increasing in k.
std::vector<double> ratio_table(int d, int A);

/// Gegenbauer coefficient of (t+0.9)(1-t)^{10d}: 1.9 I_k(10d) - I_k(10d+1).
/// Negative for even k, positive for odd k up to 10d+1, exactly zero beyond.
double delta_k(int d, int k);

struct Delta0Bound {
  double delta0 = 0.0;    // |delta_0|
  double bound = 0.0;     // (1/10)(3/2)^{9d+1}
  double log_delta0 = 0.0;
  double log_bound = 0.0;
  bool holds = false;
};
Delta0Bound delta0_bound(int d);

/// Gegenbauer coefficient of arcsin: int arcsin(t) P_k(t) dsigma(t).
/// Exactly zero for even k; evaluated for odd k as a positive term series
/// (each term a Beta-function moment of the arcsin Taylor expansion) with a
/// tail estimate, so tiny high-k coefficients keep full relative accuracy.
double arcsin_gegenbauer_coeff(const GegenbauerBasis& basis, int k);

struct QConstruction {
  int d = 0;
  double C = 0.0;   // min over odd k <= 10d+1 of c_k / |delta_k|
  int argmin_k = 0;
  double q0 = 0.0;  // C * |delta_0|
  std::vector<double> arcsin_coeffs;  // c_k, k = 0..10d+1
  std::vector<double> delta_coeffs;   // delta_k
  std::vector<double> q_coeffs;       // q_k = c_k - C delta_k
  double max_grid_violation = 0.0;    // max(0, Q(t) - arcsin(t)) on [-0.9, 1]
  double reconstruction_error = 0.0;  // max |sum delta_k P_k(t) - Delta(t)|
};

/// Builds Q(t) = arcsin(t) - C (t+0.9)(1-t)^{10d} with C chosen so every
/// Gegenbauer coefficient q_k with k >= 1 is nonnegative and q_0 > 0.
QConstruction construct_Q(int d);

struct CoefficientTable {
  int d = 0;
  int A = 0;  // 10d
  std::vector<double> I_A;     // I_k(A)
  std::vector<double> I_A1;    // I_k(A+1)
  std::vector<double> delta;   // delta_k
};

/// Table for k = 0..kmax (default 10d+1).
CoefficientTable coefficient_table(int d, int kmax = -1);

}  // namespace sdpcut
