#include "sdpcut/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include <json.hpp>

namespace sdpcut {

UnitEmbedding::UnitEmbedding(int d, Eigen::MatrixXd rows, double unit_tol)
    : d_(d), rows_(std::move(rows)) {
  if (d_ < 1) throw std::invalid_argument("dimension must be positive");
  if (rows_.cols() != d_)
    throw std::invalid_argument("row width does not match dimension");
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    const double dev = std::abs(rows_.row(i).norm() - 1.0);
    if (!(dev <= unit_tol))
      throw std::invalid_argument("vector " + std::to_string(i) +
                                  " is not unit norm (deviation " +
                                  std::to_string(dev) + ")");
  }
}

UnitEmbedding UnitEmbedding::from_cut(const Cut& x, int d) {
  if (!x.valid()) throw std::invalid_argument("labels must be +1/-1");
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(x.size(), d);
  for (int i = 0; i < x.size(); ++i) rows(i, 0) = x.labels[i];
  return UnitEmbedding(d, std::move(rows));
}

double UnitEmbedding::max_norm_deviation() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < rows_.rows(); ++i)
    worst = std::max(worst, std::abs(rows_.row(i).norm() - 1.0));
  return worst;
}

std::string UnitEmbedding::to_json() const {
  nlohmann::json j;
  j["d"] = d_;
  j["n"] = size();
  auto vectors = nlohmann::json::array();
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < d_; ++c) row.push_back(rows_(i, c));
    vectors.push_back(std::move(row));
  }
  j["vectors"] = std::move(vectors);
  return j.dump();
}

UnitEmbedding UnitEmbedding::from_json(const std::string& text, double unit_tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed embedding JSON: ") + e.what());
  }
  if (!j.contains("d") || !j.contains("n") || !j.contains("vectors"))
    throw std::invalid_argument("embedding JSON missing d/n/vectors");
  const int d = j["d"].get<int>();
  const int n = j["n"].get<int>();
  const auto& vectors = j["vectors"];
  if (!vectors.is_array() || static_cast<int>(vectors.size()) != n)
    throw std::invalid_argument("embedding JSON: vector count does not match n");
  Eigen::MatrixXd rows(n, d);
  for (int i = 0; i < n; ++i) {
    const auto& row = vectors[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("embedding JSON: row " + std::to_string(i) +
                                  " does not match d");
    for (int c = 0; c < d; ++c) rows(i, c) = row[c].get<double>();
  }
  return UnitEmbedding(d, std::move(rows), unit_tol);
}

double sdp_objective(const WeightedGraph& g, const UnitEmbedding& v) {
  if (v.size() != g.num_vertices())
    throw std::invalid_argument("embedding size does not match vertex count");
  double total = 0.0;
  for (const Edge& e : g.edges())
    total += e.w * (1.0 - v.rows().row(e.u).dot(v.rows().row(e.v)));
  return 0.5 * total;
}

FeasibilityReport check_feasibility(const UnitEmbedding& v, double tol,
                                    std::size_t max_reported) {
  FeasibilityReport report;
  report.max_norm_deviation = v.max_norm_deviation();
  const int n = v.size();
  const Eigen::MatrixXd gram = v.gram();

  auto check = [&](int i, int j, int k) {
    // j is the middle vertex; b1 = a_i a_j, b2 = a_j a_k.
    const double rij = gram(i, j), rjk = gram(j, k), rik = gram(i, k);
    for (int b1 = -1; b1 <= 1; b1 += 2) {
      for (int b2 = -1; b2 <= 1; b2 += 2) {
        const double slack = 1.0 - b1 * rij - b2 * rjk + b1 * b2 * rik;
        ++report.constraints_checked;
        if (slack < -tol) {
          const double violation = -slack;
          if (violation > report.worst_violation)
            report.worst_violation = violation;
          if (report.violating_triples.size() < max_reported)
            report.violating_triples.push_back({i, j, k, b1, b2, slack});
        }
      }
    }
  };

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        check(a, b, c);
        check(b, a, c);
        check(a, c, b);
      }
  return report;
}

int gram_rank(const UnitEmbedding& v, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v.gram(),
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmax = ev.maxCoeff();
  if (lmax <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * lmax) ++rank;
  return rank;
}

}  // namespace sdpcut
