#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdpcut {

struct Edge {
  int u;
  int v;
  double w;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Undirected Max-Cut instance: weighted edge list without self-loops or
/// duplicate pairs; all weights nonnegative. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Edge> edges);

  /// Edge-list text format: first line "n m", then m lines "u v w".
  /// Lines whose first non-blank character is '#' are comments.
  static WeightedGraph parse(std::istream& in);
  static WeightedGraph parse(const std::string& text);

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, double>>& neighbors(int i) const;

  double vertex_weight(int i) const;                  // W_i = sum_{j in N(i)} w_ij
  double total_weight() const { return total_weight_; }  // W; sum_i W_i = 2W

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<double> vertex_weight_;
  double total_weight_ = 0.0;
};

/// +1/-1 label per vertex.
struct Cut {
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
  bool valid() const {
    for (int x : labels)
      if (x != 1 && x != -1) return false;
    return true;
  }
};

/// Total weight of edges whose endpoints carry different labels.
double cut_value(const WeightedGraph& g, const Cut& x);

struct BruteForceResult {
  double value;
  Cut cut;
};

/// Exact optimum by enumerating all 2^(n-1) cuts; guarded at n <= 24.
BruteForceResult brute_force_maxcut(const WeightedGraph& g);

}  // namespace sdpcut
