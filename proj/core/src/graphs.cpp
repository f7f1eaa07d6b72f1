#include "ssc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "ssc/error.hpp"

namespace ssc {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::vector<std::pair<int, int>> vertex_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw InputError("graph order must be non-negative");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [i, j] : edges) add_edge(i, j);
}

void Graph::add_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw InputError("edge endpoint out of range: {" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (i > j) std::swap(i, j);
  auto& cell = adj_[static_cast<std::size_t>(i) * n_ + j];
  if (cell) throw InputError("duplicate edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
  cell = 1;
  adj_[static_cast<std::size_t>(j) * n_ + i] = 1;
  edges_.emplace_back(i, j);
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return adj_[static_cast<std::size_t>(i) * n_ + j] != 0;
}

bool Graph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](auto e) { return e.first == e.second; });
}

SymMatF Graph::adjacency() const {
  if (n_ == 0) throw InputError("adjacency of the empty graph");
  SymMatF a(static_cast<std::size_t>(n_));
  for (auto [i, j] : edges_) a.set(i, j, 1.0);
  return a;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_, 0);
  for (auto [i, j] : edges_) {
    ++d[i];
    if (i != j) ++d[j];
  }
  return d;
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  UnionFind uf(n_);
  int components = n_;
  for (auto [i, j] : edges_)
    if (uf.unite(i, j)) --components;
  return components == 1;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  Graph g(static_cast<int>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a; b < vertices.size(); ++b)
      if (has_edge(vertices[a], vertices[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

SpectralSummary spectral_sum(const Graph& g) {
  if (g.order() == 0) throw InputError("spectral_sum: graph has no vertices");
  SpectralSummary s;
  s.eigenvalues = eigvalsh(g.adjacency());
  s.lambda1 = s.eigenvalues[0];
  if (g.order() == 1) {
    s.lambda2 = 0.0;
    s.lambda2_by_convention = true;
  } else {
    s.lambda2 = s.eigenvalues[1];
  }
  s.spectral_sum = s.lambda1 + s.lambda2;
  return s;
}

Graph blowup(const Graph& g, int t) {
  if (t < 1) throw InputError("blowup: t must be at least 1");
  if (g.has_loops()) throw InputError("blowup: graph has loops");
  Graph out(g.order() * t);
  for (auto [u, v] : g.edges())
    for (int a = 0; a < t; ++a)
      for (int b = 0; b < t; ++b) out.add_edge(u * t + a, v * t + b);
  return out;
}

Graph knpq(int n, int p, int q) {
  if (q < 0 || p < q || p + q > n)
    throw InputError("knpq: need n >= p >= q >= 0 and p + q <= n");
  Graph g(n);
  auto part = [&](int v) { return v < p ? 0 : (v < p + q ? 1 : 2); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int a = part(i);
      const int b = part(j);
      if ((a == 0 && b == 1) || (a == 1 && b == 0)) continue;
      g.add_edge(i, j);
    }
  return g;
}

std::pair<int, int> conjecture_pq(int n) {
  if (n < 5) throw InputError("conjecture_pq: n must be at least 5");
  const int k = n / 7;
  const int r = n % 7;
  switch (r) {
    case 0:
    case 1: return {2 * k, 2 * k};
    case 2: return {2 * k + 1, 2 * k};
    case 3:
    case 4: return {2 * k + 1, 2 * k + 1};
    case 5: return {2 * k + 2, 2 * k + 1};
    default: return {2 * k + 2, 2 * k + 2};
  }
}

Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  const auto pairs = vertex_pairs(n);
  for (std::size_t b = 0; b < pairs.size(); ++b)
    if ((mask >> b) & 1U) g.add_edge(pairs[b].first, pairs[b].second);
  return g;
}

namespace {

struct LocalBest {
  bool found = false;
  double value = 0.0;
  std::uint64_t mask = 0;
  std::uint64_t examined = 0;
  std::vector<std::uint64_t> ties;  // masks within tie_tol of `value`
};

// Scans masks in [begin, end). `better(a, b)` is true when value a strictly
// improves on b by more than tie_tol.
LocalBest scan_range(int n, SearchMode mode, std::uint64_t begin, std::uint64_t end, double tie_tol) {
  const auto pairs = vertex_pairs(n);
  LocalBest best;
  SymMatF a(static_cast<std::size_t>(n));
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    if (mode == SearchMode::MinConnected) {
      UnionFind uf(n);
      int components = n;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (((mask >> b) & 1U) && uf.unite(pairs[b].first, pairs[b].second)) --components;
      if (components != 1) continue;
    }
    for (std::size_t b = 0; b < pairs.size(); ++b)
      a.set(pairs[b].first, pairs[b].second, static_cast<double>((mask >> b) & 1U));
    const auto ev = eigvalsh(a);
    const double value = ev[0] + ev[1];
    ++best.examined;
    const bool improves = !best.found ||
                          (mode == SearchMode::Max ? value > best.value + tie_tol : value < best.value - tie_tol);
    if (improves) {
      best.found = true;
      best.value = value;
      best.mask = mask;
      best.ties.assign(1, mask);
    } else if (std::abs(value - best.value) <= tie_tol) {
      best.ties.push_back(mask);
    }
  }
  return best;
}

std::vector<int> sorted_degrees(const Graph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

SearchResult search_extremal(int n, SearchMode mode, int threads, double tie_tol) {
  if (n < 2 || n > 8) throw InputError("search_extremal: n must be in [2, 8]");
  threads = std::max(1, threads);
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);

  std::vector<LocalBest> partial(static_cast<std::size_t>(threads));
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t begin = std::min(total, chunk * w);
      const std::uint64_t end = std::min(total, begin + chunk);
      workers.emplace_back([&, w, begin, end] { partial[w] = scan_range(n, mode, begin, end, tie_tol); });
    }
  }

  // Chunks are in ascending mask order, so keeping the earlier chunk on ties
  // reproduces the single-threaded smallest-mask rule.
  LocalBest best;
  std::uint64_t examined = 0;
  for (const auto& p : partial) {
    examined += p.examined;
    if (!p.found) continue;
    const bool improves = !best.found || (mode == SearchMode::Max ? p.value > best.value + tie_tol
                                                                  : p.value < best.value - tie_tol);
    if (improves) best = p;
  }
  if (!best.found) throw InputError("search_extremal: no admissible graph");

  SearchResult result;
  result.value = best.value;
  result.edge_mask = best.mask;
  result.graph = graph_from_mask(n, best.mask);
  result.graphs_examined = examined;

  std::vector<std::vector<int>> seen;
  for (const auto& p : partial) {
    if (!p.found || std::abs(p.value - best.value) > tie_tol) continue;
    for (std::uint64_t mask : p.ties) {
      Graph g = graph_from_mask(n, mask);
      auto deg = sorted_degrees(g);
      if (std::find(seen.begin(), seen.end(), deg) != seen.end()) continue;
      seen.push_back(std::move(deg));
      result.distinct_optimizers.push_back(std::move(g));
    }
  }
  return result;
}

Graph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(line_no + 1, "missing header 'n m'");
  std::istringstream header(line);
  long n = -1, m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 0)
    throw ParseError(line_no, "expected header 'n m' with n >= 1, m >= 0");

  Graph g(static_cast<int>(n));
  for (long e = 0; e < m; ++e) {
    if (!next_content_line()) throw ParseError(line_no + 1, "expected " + std::to_string(m) + " edge lines");
    std::istringstream row(line);
    long i = 0, j = 0;
    if (!(row >> i >> j) || (row >> extra)) throw ParseError(line_no, "expected edge line 'i j'");
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError(line_no, "vertex label out of range 1.." + std::to_string(n));
    try {
      g.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1));
    } catch (const InputError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  if (next_content_line()) throw ParseError(line_no, "unexpected content after the edge list");
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [i, j] : g.edges()) out << i + 1 << ' ' << j + 1 << '\n';
}

}  // namespace ssc
