#include <doctest.h>

#include <cmath>

#include "sdpcut/embedding.hpp"
#include "test_helpers.hpp"

using namespace sdpcut;
using namespace sdpcut::testing;

TEST_SUITE_BEGIN("embedding");

TEST_CASE("constructor enforces unit norms") {
  Eigen::MatrixXd rows(1, 2);
  rows << 0.5, 0.0;
  CHECK_THROWS_AS(UnitEmbedding(2, rows), std::invalid_argument);
  rows << 1.0, 0.0;
  CHECK_NOTHROW(UnitEmbedding(2, rows));
}

TEST_CASE("sdp objective on hand instances") {
  WeightedGraph k2(2, {{0, 1, 1.0}});
  Eigen::MatrixXd anti(2, 1);
  anti << 1.0, -1.0;
  CHECK(sdp_objective(k2, UnitEmbedding(1, anti)) == doctest::Approx(1.0));

  Eigen::MatrixXd same(2, 1);
  same << 1.0, 1.0;
  CHECK(sdp_objective(k2, UnitEmbedding(1, same)) == doctest::Approx(0.0));
}

TEST_CASE("C5 objective at angles 4*pi*k/5 and optimality over angle patterns") {
  auto g = cycle(5);
  auto emb = c5_embedding();
  // 5 (1 - cos(4 pi/5)) / 2 with cos(4 pi/5) = -(1+sqrt 5)/4
  const double expected = 5.0 * (1.0 + (1.0 + std::sqrt(5.0)) / 4.0) / 2.0;
  CHECK(expected == doctest::Approx(4.522542486).epsilon(1e-9));
  CHECK(sdp_objective(g, emb) == doctest::Approx(expected).epsilon(1e-12));

  // Grid search over embeddings theta_k = k*phi confirms the maximizer.
  double best = 0.0, best_phi = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double phi = 2.0 * M_PI * i / 20000.0;
    const double obj =
        (4.0 * (1.0 - std::cos(phi)) + (1.0 - std::cos(4.0 * phi))) / 2.0;
    if (obj > best) {
      best = obj;
      best_phi = phi;
    }
  }
  CHECK(best <= expected + 1e-4);
  CHECK(std::min(std::abs(best_phi - 4.0 * M_PI / 5.0),
                 std::abs(best_phi - 6.0 * M_PI / 5.0)) < 1e-3);
}

TEST_CASE("integral embeddings satisfy every triangle constraint") {
  Cut x{{1, -1, 1, 1, -1}};
  auto emb = UnitEmbedding::from_cut(x, 1);
  auto report = check_feasibility(emb);
  CHECK(report.worst_violation == doctest::Approx(0.0));
  CHECK(report.max_norm_deviation == doctest::Approx(0.0));
}

TEST_CASE("orthonormal vectors are feasible with unit slack") {
  auto emb = UnitEmbedding(3, Eigen::MatrixXd::Identity(3, 3));
  auto report = check_feasibility(emb);
  CHECK(report.worst_violation == doctest::Approx(0.0));
  // every slack is 1 - 0 - 0 + 0 = 1 > 0, so nothing is reported
  CHECK(report.violating_triples.empty());
}

TEST_CASE("coplanar vectors at 120 degrees violate by exactly 0.5") {
  Eigen::MatrixXd rows(3, 2);
  for (int k = 0; k < 3; ++k) {
    rows(k, 0) = std::cos(2.0 * M_PI * k / 3.0);
    rows(k, 1) = std::sin(2.0 * M_PI * k / 3.0);
  }
  auto report = check_feasibility(UnitEmbedding(2, rows));
  CHECK(report.worst_violation == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(!report.violating_triples.empty());
  const auto& v = report.violating_triples.front();
  CHECK(v.b1 == -1);
  CHECK(v.b2 == -1);
}

TEST_CASE("cut-induced sdp objective equals the cut value") {
  auto g = random_graph(9, 0.5, 31);
  auto bf = brute_force_maxcut(g);
  auto emb = UnitEmbedding::from_cut(bf.cut, 2);
  CHECK(sdp_objective(g, emb) == doctest::Approx(bf.value).epsilon(1e-12));
}

TEST_CASE("gram rank") {
  Eigen::MatrixXd copies(4, 3);
  for (int i = 0; i < 4; ++i) copies.row(i) << 1.0, 0.0, 0.0;
  CHECK(gram_rank(UnitEmbedding(3, copies)) == 1);

  CHECK(gram_rank(UnitEmbedding(4, Eigen::MatrixXd::Identity(4, 4))) == 4);

  CHECK(gram_rank(c5_embedding()) == 2);

  auto v = random_unit_vectors(10, 3, 5);
  CHECK(gram_rank(v) <= 3);
}

TEST_CASE("embedding JSON round trip") {
  auto emb = c5_embedding();
  auto back = UnitEmbedding::from_json(emb.to_json());
  CHECK(back.dim() == emb.dim());
  CHECK(back.size() == emb.size());
  CHECK((back.rows() - emb.rows()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("embedding JSON rejects bad input") {
  CHECK_THROWS_AS(UnitEmbedding::from_json("{"), std::invalid_argument);
  // zero vector
  CHECK_THROWS_AS(
      UnitEmbedding::from_json(R"({"d":2,"n":1,"vectors":[[0.0,0.0]]})"),
      std::invalid_argument);
  // d mismatch
  CHECK_THROWS_AS(
      UnitEmbedding::from_json(R"({"d":3,"n":1,"vectors":[[1.0,0.0]]})"),
      std::invalid_argument);
  // n mismatch
  CHECK_THROWS_AS(
      UnitEmbedding::from_json(R"({"d":2,"n":2,"vectors":[[1.0,0.0]]})"),
      std::invalid_argument);
}

TEST_SUITE_END();
