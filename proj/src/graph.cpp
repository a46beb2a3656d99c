#include "sdpcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>

namespace sdpcut {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw std::invalid_argument("vertex count must be nonnegative");
  adj_.assign(n_, {});
  vertex_weight_.assign(n_, 0.0);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (!(e.w >= 0.0)) throw std::invalid_argument("negative weight");
    const std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    adj_[e.u].emplace_back(e.v, e.w);
    adj_[e.v].emplace_back(e.u, e.w);
    vertex_weight_[e.u] += e.w;
    vertex_weight_[e.v] += e.w;
    total_weight_ += e.w;
  }
}

const std::vector<std::pair<int, double>>& WeightedGraph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("vertex index out of range");
  return adj_[i];
}

double WeightedGraph::vertex_weight(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("vertex index out of range");
  return vertex_weight_[i];
}

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;
}

}  // namespace

WeightedGraph WeightedGraph::parse(std::istream& in) {
  std::string line;
  int lineno = 0;
  long n = -1, m = -1;

  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    if (!(ls >> n >> m) || n < 0 || m < 0)
      throw parse_error(lineno, "expected header \"n m\"");
    std::string rest;
    if (ls >> rest) throw parse_error(lineno, "trailing tokens after header");
    break;
  }
  if (n < 0) throw parse_error(lineno, "missing header \"n m\"");

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  std::set<std::pair<int, int>> seen;
  long read = 0;
  while (read < m && std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    std::istringstream ls(line);
    long u, v;
    double w;
    if (!(ls >> u >> v >> w))
      throw parse_error(lineno, "expected edge \"u v w\"");
    std::string rest;
    if (ls >> rest) throw parse_error(lineno, "trailing tokens after edge");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw parse_error(lineno, "vertex index out of range");
    if (u == v) throw parse_error(lineno, "self-loop");
    if (!std::isfinite(w) || w < 0.0)
      throw parse_error(lineno, "negative or non-finite weight");
    const int a = static_cast<int>(std::min(u, v));
    const int b = static_cast<int>(std::max(u, v));
    if (!seen.insert({a, b}).second) throw parse_error(lineno, "duplicate edge");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    ++read;
  }
  if (read < m) throw parse_error(lineno, "fewer edges than declared");
  return WeightedGraph(static_cast<int>(n), std::move(edges));
}

WeightedGraph WeightedGraph::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

double cut_value(const WeightedGraph& g, const Cut& x) {
  if (x.size() != g.num_vertices())
    throw std::invalid_argument("cut length does not match vertex count");
  double total = 0.0;
  for (const Edge& e : g.edges())
    if (x.labels[e.u] != x.labels[e.v]) total += e.w;
  return total;
}

BruteForceResult brute_force_maxcut(const WeightedGraph& g) {
  const int n = g.num_vertices();
  if (n > 24) throw std::invalid_argument("brute force limited to n <= 24");
  if (n == 0) return {0.0, Cut{}};

  // Vertex 0 fixed to +1; Gray-code walk flips one vertex per step so each
  // candidate costs O(deg) instead of O(m).
  std::vector<int> labels(n, 1);
  double value = 0.0;
  double best = 0.0;
  std::vector<int> best_labels = labels;
  const std::uint64_t count = (n >= 1) ? (1ULL << (n - 1)) : 1;
  for (std::uint64_t it = 1; it < count; ++it) {
    const std::uint64_t gray = it ^ (it >> 1);
    const std::uint64_t prev = (it - 1) ^ ((it - 1) >> 1);
    unsigned bit = 0;
    std::uint64_t diff = gray ^ prev;
    while (!(diff & 1)) {
      diff >>= 1;
      ++bit;
    }
    const int flip = static_cast<int>(bit) + 1;  // vertex 0 stays fixed
    for (const auto& [j, w] : g.neighbors(flip))
      value += (labels[flip] == labels[j]) ? w : -w;
    labels[flip] = -labels[flip];
    if (value > best) {
      best = value;
      best_labels = labels;
    }
  }
  return {best, Cut{std::move(best_labels)}};
}

}  // namespace sdpcut
