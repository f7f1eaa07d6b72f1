#include "ssc/stepmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "ssc/error.hpp"

namespace ssc {
namespace {

// Weights at or below this are treated as empty blocks when forming step values.
constexpr double kWeightFloor = 1e-12;

Graph looped(int n, const std::vector<std::pair<int, int>>& one_based_edges) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, v);
  for (auto [i, j] : one_based_edges) g.add_edge(i - 1, j - 1);
  return g;
}

double top_two_sum(const SymMatF& m) {
  const auto ev = eigvalsh(m);
  return ev.size() == 1 ? ev[0] : ev[0] + ev[1];
}

double sigma_at(const Graph& g, std::span<const double> u) { return top_two_sum(weighted_matrix(g, u)); }

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<double> dirichlet_one(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> u(k);
  double total = 0.0;
  for (auto& x : u) total += (x = expo(rng));
  for (auto& x : u) x /= total;
  return u;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

CandidateGraph candidate(CandidateName name) {
  switch (name) {
    case CandidateName::K2: return {name, looped(2, {{1, 2}})};
    case CandidateName::P3: return {name, looped(3, {{1, 2}, {2, 3}})};
    case CandidateName::P4: return {name, looped(4, {{1, 2}, {2, 3}, {3, 4}})};
    case CandidateName::H5:
      return {name, looped(5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}})};
    case CandidateName::H6:
      return {name, looped(6, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}})};
  }
  throw InputError("unknown candidate");
}

CandidateGraph candidate(std::string_view name) {
  for (auto c : all_candidates())
    if (to_string(c) == name) return candidate(c);
  throw InputError("unknown candidate '" + std::string(name) + "' (expected K2, P3, P4, H5 or H6)");
}

std::string to_string(CandidateName name) {
  switch (name) {
    case CandidateName::K2: return "K2";
    case CandidateName::P3: return "P3";
    case CandidateName::P4: return "P4";
    case CandidateName::H5: return "H5";
    case CandidateName::H6: return "H6";
  }
  return "?";
}

std::vector<CandidateName> all_candidates() {
  return {CandidateName::K2, CandidateName::P3, CandidateName::P4, CandidateName::H5, CandidateName::H6};
}

StepModel::StepModel(CandidateGraph candidate, std::vector<double> weights)
    : candidate_(std::move(candidate)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != candidate_.order())
    throw InputError("weight vector length does not match the candidate order");
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw InputError("weights must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("weights must sum to 1");
}

SymMatF weighted_matrix(const Graph& g, std::span<const double> u) {
  const auto n = static_cast<std::size_t>(g.order());
  if (u.size() != n) throw InputError("weighted_matrix: weight vector length mismatch");
  SymMatF m(n);
  for (auto [i, j] : g.edges()) m.set(i, j, std::sqrt(std::max(u[i], 0.0) * std::max(u[j], 0.0)));
  return m;
}

SymMatF weighted_matrix(const StepModel& model) {
  return weighted_matrix(model.candidate().graph, model.weights());
}

double sigma(const StepModel& model) { return top_two_sum(weighted_matrix(model)); }

StepEigs step_eigs(const StepModel& model) {
  const auto& u = model.weights();
  const std::size_t k = u.size();
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < k; ++i)
    if (u[i] > kWeightFloor) positive.push_back(i);
  if (positive.size() < 2) throw InputError("step_eigs: need at least two positive weights");

  const auto dec = eigh(weighted_matrix(model));
  StepEigs out;
  out.mu1 = dec.eigenvalues[0];
  out.mu2 = dec.eigenvalues[1];
  out.alpha.assign(k, std::nullopt);
  out.beta.assign(k, std::nullopt);

  double mean_alpha = 0.0;
  for (std::size_t i : positive) {
    const double root = std::sqrt(u[i]);
    out.alpha[i] = dec.eigenvectors(i, 0) / root;
    out.beta[i] = dec.eigenvectors(i, 1) / root;
    mean_alpha += u[i] * *out.alpha[i];
  }
  if (mean_alpha < 0.0)
    for (std::size_t i : positive) out.alpha[i] = -*out.alpha[i];
  if (*out.beta[positive.front()] < *out.beta[positive.back()])
    for (std::size_t i : positive) out.beta[i] = -*out.beta[i];
  return out;
}

std::vector<std::optional<double>> ellipse_residual(const StepModel& model) {
  const auto e = step_eigs(model);
  std::vector<std::optional<double>> r(e.alpha.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (e.alpha[i])
      r[i] = e.mu1 * *e.alpha[i] * *e.alpha[i] + e.mu2 * *e.beta[i] * *e.beta[i] - (e.mu1 + e.mu2);
  return r;
}

std::vector<KappaEntry> adjacency_criterion_check(const StepModel& model, double tol) {
  const auto e = step_eigs(model);
  const auto& g = model.candidate().graph;
  std::vector<KappaEntry> out;
  for (int i = 0; i < g.order(); ++i) {
    if (!e.alpha[i]) continue;
    for (int j = i; j < g.order(); ++j) {
      if (!e.alpha[j]) continue;
      KappaEntry entry;
      entry.i = i;
      entry.j = j;
      entry.kappa = *e.alpha[i] * *e.alpha[j] + *e.beta[i] * *e.beta[j];
      entry.adjacent = g.has_edge(i, j);
      entry.consistent = entry.adjacent ? entry.kappa >= -tol : entry.kappa <= tol;
      out.push_back(entry);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> true_twin_check(const Graph& g) {
  const int n = g.order();
  auto closed = [&](int v) {
    std::vector<bool> nb(n, false);
    nb[v] = true;
    for (int w = 0; w < n; ++w)
      if (g.has_edge(v, w)) nb[w] = true;
    return nb;
  };
  std::vector<std::vector<bool>> hoods;
  for (int v = 0; v < n; ++v) hoods.push_back(closed(v));
  std::vector<std::pair<int, int>> twins;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (hoods[i] == hoods[j]) twins.emplace_back(i, j);
  return twins;
}

std::vector<std::vector<double>> simplex_grid(int k, int denominator) {
  std::vector<std::vector<double>> out;
  if (k < 1 || denominator < 1) return out;
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  // Enumerate compositions of `denominator` into k non-negative parts.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      counts[pos] = left;
      std::vector<double> u(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) u[i] = static_cast<double>(counts[i]) / denominator;
      out.push_back(std::move(u));
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, denominator);
  return out;
}

OptimizeResult ascend_sigma(const Graph& g, std::vector<double> start, const OptimizeOptions& options,
                            std::uint64_t noise_seed) {
  const std::size_t k = start.size();
  auto rng = stream_rng(noise_seed, 0x5eed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> u = project_simplex(start);
  double f = sigma_at(g, u);
  OptimizeResult best{u, f, 1};

  const double h = options.fd_step;
  double step = 0.1;
  std::vector<double> grad(k), probe(k);

  for (int it = 0; it < options.max_iterations; ++it) {
    const auto ev = eigvalsh(weighted_matrix(g, u));
    if (k >= 3 && ev[1] - ev[2] < options.crossing_gap) {
      // λ2 is not differentiable here; step off the crossing instead.
      for (std::size_t i = 0; i < k; ++i) probe[i] = u[i] + options.crossing_noise * gauss(rng);
      u = project_simplex(probe);
      f = sigma_at(g, u);
      if (f > best.sigma) best = {u, f, 1};
      continue;
    }

    for (std::size_t i = 0; i < k; ++i) {
      probe = u;
      probe[i] = u[i] + h;
      const double up = sigma_at(g, probe);
      if (u[i] >= h) {
        probe[i] = u[i] - h;
        grad[i] = (up - sigma_at(g, probe)) / (2.0 * h);
      } else {
        grad[i] = (up - f) / h;
      }
    }

    bool accepted = false;
    while (step > 1e-14) {
      for (std::size_t i = 0; i < k; ++i) probe[i] = u[i] + step * grad[i];
      auto candidate_u = project_simplex(probe);
      double decrease = 0.0;
      for (std::size_t i = 0; i < k; ++i) decrease += grad[i] * (candidate_u[i] - u[i]);
      const double fc = sigma_at(g, candidate_u);
      if (decrease > 0.0 && fc >= f + 1e-4 * decrease) {
        u = std::move(candidate_u);
        f = fc;
        step = std::min(1.0, step * 2.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (f > best.sigma) best = {u, f, 1};
    if (!accepted) break;
  }
  return best;
}

OptimizeResult maximize_sigma(const CandidateGraph& candidate, const OptimizeOptions& options) {
  if (options.restarts < 1) throw InputError("maximize_sigma: restarts must be at least 1");
  const Graph& g = candidate.graph;
  const auto k = static_cast<std::size_t>(g.order());

  std::vector<std::vector<double>> starts;
  if (options.grid_denominator > 0) {
    auto grid = simplex_grid(static_cast<int>(k), options.grid_denominator);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = sigma_at(g, grid[i]);
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t take = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(0, options.grid_refine)));
    for (std::size_t i = 0; i < take; ++i) starts.push_back(grid[order[i]]);
  }
  for (int r = 0; r < options.restarts; ++r) {
    auto rng = stream_rng(options.seed, static_cast<std::uint64_t>(r));
    starts.push_back(dirichlet_one(k, rng));
  }

  std::vector<OptimizeResult> results(starts.size());
  const int threads = std::max(1, options.threads);
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t s = static_cast<std::size_t>(w); s < starts.size(); s += static_cast<std::size_t>(threads))
          results[s] = ascend_sigma(g, starts[s], options, options.seed + s);
      });
  }

  OptimizeResult best = results.front();
  for (const auto& r : results) {
    if (r.sigma > best.sigma + 1e-12 || (std::abs(r.sigma - best.sigma) <= 1e-12 && lex_less(r.weights, best.weights)))
      best = r;
  }
  best.starts = static_cast<int>(starts.size());
  return best;
}

}  // namespace ssc
