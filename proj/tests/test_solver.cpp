#include <doctest.h>

#include "sdpcut/solver.hpp"
#include "test_helpers.hpp"

using namespace sdpcut;
using namespace sdpcut::testing;

TEST_SUITE_BEGIN("solver");

TEST_CASE("K2 at d=1 reaches the antipodal optimum") {
  WeightedGraph k2(2, {{0, 1, 1.0}});
  auto res = solve_low_rank(k2, 1);
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.embedding.rows()(0, 0) * res.embedding.rows()(1, 0) ==
        doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("K3 with the triangle penalty lands on the constrained optimum 2") {
  auto res = solve_low_rank(triangle(), 2);
  CHECK(res.objective == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(res.worst_violation <= 1e-4);
}

TEST_CASE("K3 without the penalty reaches the unconstrained optimum 2.25") {
  SolverConfig cfg;
  cfg.triangle_penalty = false;
  auto res = solve_low_rank(triangle(), 2, cfg);
  CHECK(res.objective == doctest::Approx(2.25).epsilon(1e-4));
}

TEST_CASE("C5 basic SDP at d=2 reaches the 4*pi*k/5 embedding value") {
  SolverConfig cfg;
  cfg.triangle_penalty = false;
  auto res = solve_low_rank(cycle(5), 2, cfg);
  CHECK(res.objective >= 4.52);
  CHECK(res.objective <= 4.5225424860 + 1e-6);
}

TEST_CASE("triangle inequalities pull the C5 value down to the max cut") {
  // The 5-cycle inequality sum z_e <= 4 follows from the triple constraints,
  // so the constrained optimum is the integral cut value 4.
  auto res = solve_low_rank(cycle(5), 2);
  CHECK(res.objective <= 4.0 + 5e-3);
  CHECK(res.objective >= 4.0 - 5e-2);
  CHECK(res.worst_violation <= 1e-4);
}

TEST_CASE("seeding with the brute-force cut never loses value") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    auto g = random_graph(8, 0.6, seed);
    auto bf = brute_force_maxcut(g);
    auto init = UnitEmbedding::from_cut(bf.cut, 2);
    auto res = solve_low_rank(g, 2, {}, init);
    CHECK(res.objective >= bf.value - 1e-9);
  }
}

TEST_CASE("penalized objective is monotone within each mu phase") {
  auto res = solve_low_rank(cycle(5), 2);
  for (std::size_t i = 1; i < res.trace.size(); ++i) {
    if (res.trace[i].first == res.trace[i - 1].first)
      CHECK(res.trace[i].second >=
            res.trace[i - 1].second - 1e-9 * (1.0 + std::abs(res.trace[i].second)));
  }
}

TEST_CASE("same seed reproduces the same solve") {
  auto g = random_graph(10, 0.5, 77);
  SolverConfig cfg;
  cfg.seed = 42;
  auto a = solve_low_rank(g, 3, cfg);
  auto b = solve_low_rank(g, 3, cfg);
  CHECK(a.objective == b.objective);
  CHECK((a.embedding.rows() - b.embedding.rows()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solver output is a valid unit embedding") {
  auto g = random_graph(12, 0.4, 5);
  auto res = solve_low_rank(g, 3);
  CHECK(res.embedding.max_norm_deviation() <= 1e-12);
  CHECK(res.embedding.size() == g.num_vertices());
}

TEST_CASE("large instances fall back to sampled triangle penalties") {
  auto g = random_graph(220, 0.03, 64);
  SolverConfig cfg;
  cfg.max_iters = 40;
  cfg.sampled_triples = 4000;
  auto res = solve_low_rank(g, 2, cfg);
  CHECK(res.embedding.size() == 220);
  CHECK(res.embedding.max_norm_deviation() <= 1e-12);
  CHECK(res.objective >= 0.0);
}

TEST_SUITE_END();
