#include <doctest.h>

#include <sstream>

#include "sdpcut/graph.hpp"
#include "test_helpers.hpp"

using namespace sdpcut;
using namespace sdpcut::testing;

TEST_SUITE_BEGIN("graph");

TEST_CASE("parse accepts the documented edge-list format") {
  auto g = WeightedGraph::parse("3 3\n0 1 1\n1 2 1\n0 2 1");
  CHECK(g.num_vertices() == 3);
  CHECK(g.edges().size() == 3);
  CHECK(g.total_weight() == doctest::Approx(3.0));
}

TEST_CASE("parse skips comments and blank lines") {
  auto g = WeightedGraph::parse(
      "# a triangle\n3 3\n\n0 1 1\n  # middle comment\n1 2 1\n0 2 1\n");
  CHECK(g.edges().size() == 3);
}

TEST_CASE("parse rejects self-loops with a line number") {
  try {
    WeightedGraph::parse("2 1\n0 0 1");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
  }
}

TEST_CASE("parse rejects negative weights") {
  CHECK_THROWS_AS(WeightedGraph::parse("2 1\n0 1 -2"), parse_error);
}

TEST_CASE("parse rejects duplicate edges in either orientation") {
  CHECK_THROWS_AS(WeightedGraph::parse("3 2\n0 1 1\n1 0 2"), parse_error);
}

TEST_CASE("parse rejects out-of-range indices and malformed lines") {
  CHECK_THROWS_AS(WeightedGraph::parse("2 1\n0 5 1"), parse_error);
  CHECK_THROWS_AS(WeightedGraph::parse("2 1\n0 1"), parse_error);
  CHECK_THROWS_AS(WeightedGraph::parse("nope"), parse_error);
  CHECK_THROWS_AS(WeightedGraph::parse("3 2\n0 1 1"), parse_error);
}

TEST_CASE("cut_value counts crossing weight") {
  auto k3 = triangle();
  CHECK(cut_value(k3, Cut{{1, -1, -1}}) == doctest::Approx(2.0));
  CHECK(cut_value(k3, Cut{{1, 1, 1}}) == doctest::Approx(0.0));

  WeightedGraph path(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  CHECK(cut_value(path, Cut{{1, -1, 1}}) == doctest::Approx(3.0));

  CHECK_THROWS_AS(cut_value(k3, Cut{{1, -1}}), std::invalid_argument);
}

TEST_CASE("vertex and total weight") {
  auto k3 = triangle();
  CHECK(k3.vertex_weight(0) == doctest::Approx(2.0));

  WeightedGraph lonely(2, {});
  CHECK(lonely.vertex_weight(0) == doctest::Approx(0.0));
  CHECK(lonely.total_weight() == doctest::Approx(0.0));

  auto s = star(3);
  CHECK(s.vertex_weight(0) == doctest::Approx(3.0));

  CHECK(cycle(5).total_weight() == doctest::Approx(5.0));
}

TEST_CASE("sum of vertex weights is twice the total weight") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto g = random_graph(12, 0.5, seed);
    double sum = 0.0;
    for (int i = 0; i < g.num_vertices(); ++i) sum += g.vertex_weight(i);
    CHECK(sum == doctest::Approx(2.0 * g.total_weight()));
  }
}

TEST_CASE("brute force on small named instances") {
  CHECK(brute_force_maxcut(triangle()).value == doctest::Approx(2.0));
  CHECK(brute_force_maxcut(cycle(5)).value == doctest::Approx(4.0));
  CHECK(brute_force_maxcut(complete(4)).value == doctest::Approx(4.0));
}

TEST_CASE("brute force returns an achieving cut and rejects large instances") {
  auto g = random_graph(10, 0.6, 7);
  auto bf = brute_force_maxcut(g);
  CHECK(cut_value(g, bf.cut) == doctest::Approx(bf.value));

  CHECK_THROWS_AS(brute_force_maxcut(random_graph(30, 0.1, 1)),
                  std::invalid_argument);
}

TEST_CASE("cut value is invariant under a global label flip") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    auto g = random_graph(10, 0.5, seed);
    GaussianSampler rng(seed);
    Cut x;
    for (int i = 0; i < g.num_vertices(); ++i)
      x.labels.push_back(rng.uniform01() < 0.5 ? 1 : -1);
    Cut neg = x;
    for (int& l : neg.labels) l = -l;
    CHECK(cut_value(g, x) == doctest::Approx(cut_value(g, neg)));
    CHECK(cut_value(g, x) >= 0.0);
    CHECK(cut_value(g, x) <= g.total_weight() + 1e-12);
  }
}

TEST_CASE("brute force dominates arbitrary cuts") {
  auto g = random_graph(9, 0.5, 21);
  auto bf = brute_force_maxcut(g);
  GaussianSampler rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    Cut x;
    for (int i = 0; i < g.num_vertices(); ++i)
      x.labels.push_back(rng.uniform01() < 0.5 ? 1 : -1);
    CHECK(bf.value >= cut_value(g, x) - 1e-12);
  }
}

TEST_SUITE_END();
