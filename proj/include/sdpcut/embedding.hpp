#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdpcut/graph.hpp"

namespace sdpcut {

/// One unit vector per vertex, stored as rows of an n x d matrix.
class UnitEmbedding {
 public:
  static constexpr double kDefaultUnitTol = 1e-8;

  UnitEmbedding(int d, Eigen::MatrixXd rows, double unit_tol = kDefaultUnitTol);

  /// Rank-one embedding induced by a cut: v_i = x_i * e_1 in R^d.
  static UnitEmbedding from_cut(const Cut& x, int d = 1);

  int dim() const { return d_; }
  int size() const { return static_cast<int>(rows_.rows()); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  Eigen::MatrixXd gram() const { return rows_ * rows_.transpose(); }
  double max_norm_deviation() const;

  /// JSON schema: {"d": int, "n": int, "vectors": [[...], ...]}
  std::string to_json() const;
  static UnitEmbedding from_json(const std::string& text,
                                 double unit_tol = kDefaultUnitTol);

 private:
  int d_;
  Eigen::MatrixXd rows_;
};

/// (1/2) * sum_{(i,j) in E} w_ij (1 - <v_i, v_j>).
double sdp_objective(const WeightedGraph& g, const UnitEmbedding& v);

/// One reduced triangle constraint: slack of
/// 1 - b1*rho_ij - b2*rho_jk + b1*b2*rho_ik with j the middle vertex.
struct TriangleViolation {
  int i, j, k;
  int b1, b2;
  double slack;
};

struct FeasibilityReport {
  double max_norm_deviation = 0.0;
  double worst_violation = 0.0;  // max(0, -min slack); 0 means feasible
  std::vector<TriangleViolation> violating_triples;
  std::size_t constraints_checked = 0;

  bool feasible(double tol) const { return worst_violation <= tol; }
};

/// Checks every unordered triple with all three middle-vertex choices and all
/// four sign patterns (the eight a-patterns of the squared-norm form collapse
/// to four after expansion).
FeasibilityReport check_feasibility(const UnitEmbedding& v, double tol = 1e-6,
                                    std::size_t max_reported = 32);

/// Number of Gram eigenvalues above tol * max(1, largest eigenvalue).
int gram_rank(const UnitEmbedding& v, double tol = 1e-9);

}  // namespace sdpcut
