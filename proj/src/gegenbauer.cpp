#include "sdpcut/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace sdpcut {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif

// Unnormalized C_k^lambda(t) by the recurrence
//   k C_k = 2(k+lambda-1) t C_{k-1} - (k+2lambda-2) C_{k-2}.
template <typename Real>
Real gegenbauer_raw(int k, Real lambda, Real t) {
  if (k == 0) return Real(1);
  Real prev = Real(1);
  Real cur = 2 * lambda * t;
  for (int m = 2; m <= k; ++m) {
    Real next = (2 * (m + lambda - 1) * t * cur - (m + 2 * lambda - 2) * prev) / Real(m);
    prev = cur;
    cur = next;
  }
  return cur;
}

double ln_beta(double x, double y) {
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

// Gauss rule for the normalized measure c_d (1-t^2)^w dt, held in extended
// precision. Weights are proportional to (1-t^2)/C_{N-1}(t)^2 at the roots of
// C_N and are calibrated against the total mass 1.
struct QuadRule {
  std::vector<wide> nodes;
  std::vector<wide> weights;
};

QuadRule build_rule(int d, int order) {
  const double lambda_d = (d - 2) / 2.0;
  const wide lambda = wide(d - 2) / 2;

  // Golub-Welsch on the monic Jacobi matrix for double-precision starting
  // points: b_m = m(m+2*lambda-1) / (4(m+lambda)(m+lambda-1)).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int m = 1; m < order; ++m) {
    const double b =
        m * (m + 2.0 * lambda_d - 1.0) /
        (4.0 * (m + lambda_d) * (m + lambda_d - 1.0));
    jacobi(m, m - 1) = jacobi(m - 1, m) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi,
                                                    Eigen::EigenvaluesOnly);

  QuadRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  wide total = 0;
  for (int j = 0; j < order; ++j) {
    wide t = wide(es.eigenvalues()(j));
    // Newton refinement on C_N; derivative from
    // (1-t^2) C_N' = -N t C_N + (N+2lambda-1) C_{N-1}.
    for (int it = 0; it < 4; ++it) {
      const wide cn = gegenbauer_raw(order, lambda, t);
      const wide cn1 = gegenbauer_raw(order - 1, lambda, t);
      const wide deriv =
          (-wide(order) * t * cn + (order + 2 * lambda - 1) * cn1) / (1 - t * t);
      if (deriv == wide(0)) break;
      t -= cn / deriv;
    }
    const wide cn1 = gegenbauer_raw(order - 1, lambda, t);
    const wide w = (1 - t * t) / (cn1 * cn1);
    rule.nodes[j] = t;
    rule.weights[j] = w;
    total += w;
  }
  for (auto& w : rule.weights) w /= total;
  return rule;
}

const QuadRule& cached_rule(int d, int order) {
  static std::map<std::pair<int, int>, QuadRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(d, order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_rule(d, order)).first;
  return it->second;
}

wide pow_int(wide base, int e) {
  wide out = 1;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

// One pass of the oracle integral at a fixed rule order; also reports the
// magnitude scale sum |w_j f_j| that the cancellation is measured against.
wide integral_once(const GegenbauerBasis& basis, int k, int A, int order,
                   wide* scale) {
  const QuadRule& rule = cached_rule(basis.dim(), order);
  const wide lambda = wide(basis.dim() - 2) / 2;
  const wide norm = gegenbauer_raw(k, lambda, wide(1));
  wide sum = 0, mag = 0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const wide t = rule.nodes[j];
    const wide term = rule.weights[j] * pow_int(1 - t, A) *
                      gegenbauer_raw(k, lambda, t) / norm;
    sum += term;
    mag += term < 0 ? -term : term;
  }
  if (scale) *scale = mag;
  return sum;
}

}  // namespace

GegenbauerBasis::GegenbauerBasis(int d) : d_(d) {
  if (d < 3)
    throw std::invalid_argument(
        "Gegenbauer basis requires d >= 3 (weight exponent must be >= 0)");
  w_ = (d - 3) / 2.0;
  lambda_ = (d - 2) / 2.0;
}

double GegenbauerBasis::measure_constant() const {
  return std::exp(std::lgamma(d_ / 2.0) - 0.5 * std::log(M_PI) -
                  std::lgamma((d_ - 1) / 2.0));
}

double GegenbauerBasis::eval(int k, double t) const {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (!(t >= -1.0 - 1e-12 && t <= 1.0 + 1e-12))
    throw std::invalid_argument("t outside [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  return gegenbauer_raw(k, lambda_, t) / gegenbauer_raw(k, lambda_, 1.0);
}

double gegenbauer_norm_sq(const GegenbauerBasis& basis, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const int d = basis.dim();
  const double lambda = basis.lambda();
  // c_d * pi * 2^(1-2 lambda) * Gamma(2 lambda)^2 * k! /
  //   ((k+lambda) Gamma(lambda)^2 Gamma(k+2 lambda)); equals 1/(2k+1) at d=3.
  const double log_cd = std::lgamma(d / 2.0) - 0.5 * std::log(M_PI) -
                        std::lgamma((d - 1) / 2.0);
  const double log_h = log_cd + std::log(M_PI) +
                       (1.0 - 2.0 * lambda) * std::log(2.0) +
                       2.0 * std::lgamma(2.0 * lambda) + std::lgamma(k + 1.0) -
                       std::log(k + lambda) - 2.0 * std::lgamma(lambda) -
                       std::lgamma(k + 2.0 * lambda);
  return std::exp(log_h);
}

double I_closed(const GegenbauerBasis& basis, int k, int A) {
  if (k < 0 || A < 0) throw std::invalid_argument("k and A must be nonnegative");
  if (k > A) return 0.0;
  const int d = basis.dim();
  const double w = basis.weight_exponent();
  // I_k(A) = c_d (-1)^k (A-k+1)^rising(k) / (2^k (w+1)^rising(k))
  //          * 2^(A+k+2w+1) * B(A+w+1, k+w+1)
  const double log_cd = std::lgamma(d / 2.0) - 0.5 * std::log(M_PI) -
                        std::lgamma((d - 1) / 2.0);
  const double log_rising_top = std::lgamma(A + 1.0) - std::lgamma(A - k + 1.0);
  const double log_rising_bot = std::lgamma(w + 1.0 + k) - std::lgamma(w + 1.0);
  const double log_mag = log_cd + log_rising_top - log_rising_bot +
                         (A + 2.0 * w + 1.0) * std::log(2.0) +
                         ln_beta(A + w + 1.0, k + w + 1.0);
  const double mag = std::exp(log_mag);
  return (k & 1) ? -mag : mag;
}

double I_quadrature(const GegenbauerBasis& basis, int k, int A, double rel_tol) {
  if (k < 0 || A < 0) throw std::invalid_argument("k and A must be nonnegative");
  int order = std::max(12, (A + k) / 2 + 6);
  wide scale = 0;
  wide value = integral_once(basis, k, A, order, &scale);
  for (int round = 0; round < 3; ++round) {
    const int next_order = order + 8;
    wide check = integral_once(basis, k, A, next_order, &scale);
    const double diff = std::abs(static_cast<double>(value - check));
    const double floor =
        std::max(1e-14, 1e-14 * static_cast<double>(scale));
    if (diff <= std::max(rel_tol * std::abs(static_cast<double>(check)), floor)) {
      return static_cast<double>(check);
    }
    value = check;
    order = next_order;
  }
  return static_cast<double>(value);
}

double ik_ratio(int d, int k, int A) {
  if (d < 2) throw std::invalid_argument("ratio defined for d >= 2");
  if (k < 0 || k > A) throw std::invalid_argument("requires 0 <= k <= A");
  const double w = (d - 3) / 2.0;
  return 2.0 * ((A + 1.0) / (A + 1.0 - k)) *
         ((A + w + 1.0) / (A + k + 2.0 * w + 2.0));
}

double ik_ratio_min(int d, int A) { return ik_ratio(d, 0, A); }

std::vector<double> ratio_table(int d, int A) {
  std::vector<double> out;
  out.reserve(A + 1);
  for (int k = 0; k <= A; ++k) out.push_back(ik_ratio(d, k, A));
  return out;
}

double delta_k(int d, int k) {
  GegenbauerBasis basis(d);
  const int a = 10 * d;
  if (k > a + 1) return 0.0;
  if (k == a + 1) return -I_closed(basis, k, a + 1);
  // delta_k = I_k(A) (1.9 - R) with R the signed ratio I_k(A+1)/I_k(A) > 1.9;
  // this form avoids the subtraction of two lgamma-sized magnitudes.
  return I_closed(basis, k, a) * (1.9 - ik_ratio(d, k, a));
}

Delta0Bound delta0_bound(int d) {
  if (d < 3) throw std::invalid_argument("requires d >= 3");
  const int a = 10 * d;
  const double w = (d - 3) / 2.0;
  const double log_cd = std::lgamma(d / 2.0) - 0.5 * std::log(M_PI) -
                        std::lgamma((d - 1) / 2.0);
  const double log_i0 = log_cd + (a + 2.0 * w + 1.0) * std::log(2.0) +
                        ln_beta(a + w + 1.0, w + 1.0);
  Delta0Bound out;
  out.log_delta0 = log_i0 + std::log(ik_ratio_min(d, a) - 1.9);
  out.log_bound = std::log(0.1) + (9.0 * d + 1.0) * std::log(1.5);
  out.delta0 = std::exp(out.log_delta0);
  out.bound = std::exp(out.log_bound);
  out.holds = out.log_delta0 >= out.log_bound;
  return out;
}

double arcsin_gegenbauer_coeff(const GegenbauerBasis& basis, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (k % 2 == 0) return 0.0;  // odd function against an even polynomial

  const int d = basis.dim();
  const double w = basis.weight_exponent();
  const double log_cd = std::lgamma(d / 2.0) - 0.5 * std::log(M_PI) -
                        std::lgamma((d - 1) / 2.0);

  // c_k = sum_{m >= (k-1)/2} taylor(m) * c_d * (2m+1)!/(2m+1-k)! /
  //       (2^k (w+1)^rising(k)) * B((2m+2-k)/2, k+w+1),
  // every term positive. Successive terms obey
  //   T(m+1)/T(m) = (2m+1)^2 / ((2m+3-k)(2m+k+2w+4)),
  // and T(m) ~ m^{-(5/2+w)}, so the truncated tail is appended as
  // T(M) * M / (3/2 + w).
  const long m0 = (k - 1) / 2;
  const double log_taylor0 = std::lgamma(2.0 * m0 + 1.0) -
                             m0 * std::log(4.0) -
                             2.0 * std::lgamma(m0 + 1.0) -
                             std::log(2.0 * m0 + 1.0);
  const double log_t0 = log_taylor0 + log_cd + std::lgamma(k + 1.0) -
                        k * std::log(2.0) -
                        (std::lgamma(w + 1.0 + k) - std::lgamma(w + 1.0)) +
                        ln_beta(0.5, k + w + 1.0);
  double term = std::exp(log_t0);
  double sum = term;
  const double tail_exponent = 1.5 + w;
  double tail = 0.0;
  for (long m = m0; m < m0 + 2000000; ++m) {
    const double num = (2.0 * m + 1.0) * (2.0 * m + 1.0);
    const double den = (2.0 * m + 3.0 - k) * (2.0 * m + k + 2.0 * w + 4.0);
    term *= num / den;
    sum += term;
    tail = term * static_cast<double>(m + 1) / tail_exponent;
    if (tail <= 1e-12 * sum && m > m0 + 16) break;
  }
  return sum + tail;
}

QConstruction construct_Q(int d) {
  GegenbauerBasis basis(d);
  const int a = 10 * d;
  const int kmax = a + 1;

  QConstruction q;
  q.d = d;
  q.arcsin_coeffs.resize(kmax + 1);
  q.delta_coeffs.resize(kmax + 1);
  q.q_coeffs.resize(kmax + 1);

  q.C = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kmax; ++k) {
    q.arcsin_coeffs[k] = arcsin_gegenbauer_coeff(basis, k);
    q.delta_coeffs[k] = delta_k(d, k);
    if (k % 2 == 1) {
      const double ratio = q.arcsin_coeffs[k] / q.delta_coeffs[k];
      if (ratio < q.C) {
        q.C = ratio;
        q.argmin_k = k;
      }
    }
  }
  for (int k = 0; k <= kmax; ++k)
    q.q_coeffs[k] = q.arcsin_coeffs[k] - q.C * q.delta_coeffs[k];
  q.q0 = q.q_coeffs[0];  // = C * |delta_0| since the arcsin coefficient is 0

  // Q(t) <= arcsin(t) on [-0.9, 1]: the subtracted penalty C(t+0.9)(1-t)^{10d}
  // is nonnegative there.
  for (int i = 0; i <= 600; ++i) {
    const double t = -0.9 + 1.9 * i / 600.0;
    const double penalty = q.C * (t + 0.9) * std::pow(1.0 - t, a);
    q.max_grid_violation = std::max(q.max_grid_violation, -penalty);
  }

  // The finite expansion sum_k (delta_k / ||P_k||^2) P_k must reproduce
  // (t+0.9)(1-t)^{10d}; the projections are raw inner products.
  std::vector<double> inv_norm(kmax + 1);
  for (int k = 0; k <= kmax; ++k)
    inv_norm[k] = 1.0 / gegenbauer_norm_sq(basis, k);
  double scale = 0.0;
  std::vector<double> recon_err;
  for (int i = 0; i <= 400; ++i) {
    const double t = -1.0 + 2.0 * i / 400.0;
    const double target = (t + 0.9) * std::pow(1.0 - t, a);
    double recon = 0.0;
    for (int k = 0; k <= kmax; ++k)
      recon += q.delta_coeffs[k] * inv_norm[k] * basis.eval(k, t);
    recon_err.push_back(std::abs(recon - target));
    scale = std::max(scale, std::abs(target));
  }
  for (double e : recon_err)
    q.reconstruction_error = std::max(q.reconstruction_error, e / scale);
  return q;
}

CoefficientTable coefficient_table(int d, int kmax) {
  GegenbauerBasis basis(d);
  const int a = 10 * d;
  if (kmax < 0) kmax = a + 1;
  CoefficientTable table;
  table.d = d;
  table.A = a;
  for (int k = 0; k <= kmax; ++k) {
    table.I_A.push_back(I_closed(basis, k, a));
    table.I_A1.push_back(I_closed(basis, k, a + 1));
    table.delta.push_back(delta_k(d, k));
  }
  return table;
}

}  // namespace sdpcut
