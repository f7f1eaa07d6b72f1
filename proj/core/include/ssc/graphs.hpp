#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ssc/numerics.hpp"

namespace ssc {

/// Undirected graph on vertices 0..n-1. Loops (i == j) are allowed and
/// contribute a 1 on the diagonal of the adjacency matrix. The text format
/// uses 1-based labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Throws InputError on an out-of-range endpoint or a duplicate edge.
  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;
  bool has_loops() const;

  /// Edges as (i, j) with i <= j, in insertion order.
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  SymMatF adjacency() const;
  std::vector<int> degrees() const;  // loops count once
  bool connected() const;

  /// Induced subgraph on `vertices`, relabeled in the given order.
  Graph induced(const std::vector<int>& vertices) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint8_t> adj_;  // n*n
};

struct SpectralSummary {
  std::vector<double> eigenvalues;  // descending
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double spectral_sum = 0.0;
  /// Set for n = 1, where lambda2 is reported as 0 by convention.
  bool lambda2_by_convention = false;
};

SpectralSummary spectral_sum(const Graph& g);

/// Open blowup: each vertex becomes t independent copies; copies of u and v
/// are adjacent iff u ~ v. Copy c of vertex v is vertex v*t + c.
Graph blowup(const Graph& g, int t);

/// Join of K_{n-p-q} with K_p ∪ K_q. Vertices 0..p-1 form A, p..p+q-1 form B,
/// the rest form C.
Graph knpq(int n, int p, int q);

/// (p, q) from the case table for n = 7k + r, n >= 5.
std::pair<int, int> conjecture_pq(int n);

enum class SearchMode { Max, MinConnected };

struct SearchResult {
  Graph graph;
  double value = 0.0;
  std::uint64_t edge_mask = 0;
  std::uint64_t graphs_examined = 0;
  /// One representative per distinct degree sequence among all optimal masks.
  std::vector<Graph> distinct_optimizers;
};

/// Exhaustive search over all labeled loop-free graphs on n vertices
/// (2 <= n <= 8). Bit b of the edge mask is the b-th pair (i, j), i < j, in
/// lexicographic order. Ties within `tie_tol` keep the smallest mask.
SearchResult search_extremal(int n, SearchMode mode, int threads = 1, double tie_tol = 1e-9);

/// Graph from an edge bitmask in the ordering used by search_extremal.
Graph graph_from_mask(int n, std::uint64_t mask);

/// Graph text format: "n m" then m lines "i j" (1-based, i == j is a loop).
/// Throws ParseError with the offending line number.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace ssc
