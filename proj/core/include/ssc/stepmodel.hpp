#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/graphs.hpp"
#include "ssc/numerics.hpp"

namespace ssc {

/// Base graphs of the step-graphon reduction. Every vertex carries a loop.
/// K2 (two looped, adjacent vertices) is the degenerate two-block case whose
/// spectral sum equals the trace for every weight vector.
enum class CandidateName { K2, P3, P4, H5, H6 };

struct CandidateGraph {
  CandidateName name;
  Graph graph;

  int order() const noexcept { return graph.order(); }
};

/// Catalog entry by name. Vertex i in the figure labeling is vertex i-1 here.
CandidateGraph candidate(CandidateName name);

/// "K2", "P3", "P4", "H5", "H6" (case-sensitive). Throws InputError otherwise.
CandidateGraph candidate(std::string_view name);
std::string to_string(CandidateName name);
std::vector<CandidateName> all_candidates();

/// A candidate plus simplex weights u (u_i >= 0, Σu_i = 1 within 1e-12).
class StepModel {
 public:
  /// Throws InputError on a length mismatch or a weight vector off the simplex.
  StepModel(CandidateGraph candidate, std::vector<double> weights);

  const CandidateGraph& candidate() const noexcept { return candidate_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  CandidateGraph candidate_;
  std::vector<double> weights_;
};

/// M* = D_u^{1/2} A D_u^{1/2}: entry √(u_i u_j) where i ~ j (loops included).
SymMatF weighted_matrix(const StepModel& model);

/// Same matrix for arbitrary non-negative weights (no simplex requirement);
/// used by the optimizer's finite differences.
SymMatF weighted_matrix(const Graph& g, std::span<const double> weights);

/// λ1(M*) + λ2(M*).
double sigma(const StepModel& model);

struct StepEigs {
  double mu1 = 0.0;
  double mu2 = 0.0;
  /// Step values of the first/second eigenfunction; empty for zero-weight
  /// blocks, where a_i/√u_i is undefined.
  std::vector<std::optional<double>> alpha;
  std::vector<std::optional<double>> beta;
};

/// α_i = a_i/√u_i and β_i = b_i/√u_i from the top two eigenvectors a, b of M*.
/// Signs: Σ u_i α_i >= 0 and β_first >= β_last over positive-weight blocks.
/// Throws InputError when fewer than two weights are positive.
StepEigs step_eigs(const StepModel& model);

/// r_i = μ1 α_i² + μ2 β_i² − (μ1 + μ2) per positive-weight block.
std::vector<std::optional<double>> ellipse_residual(const StepModel& model);

struct KappaEntry {
  int i = 0;
  int j = 0;
  double kappa = 0.0;
  bool adjacent = false;
  bool consistent = false;
};

/// κ_ij = α_iα_j + β_iβ_j for every pair i <= j of positive-weight blocks,
/// with consistency meaning κ >= −tol on edges and κ <= tol on non-edges.
std::vector<KappaEntry> adjacency_criterion_check(const StepModel& model, double tol = 1e-8);

/// Pairs (i, j), i < j, whose closed neighbourhoods coincide.
std::vector<std::pair<int, int>> true_twin_check(const Graph& g);

struct OptimizeOptions {
  int restarts = 200;
  std::uint64_t seed = 0;
  /// Mesh 1/grid_denominator for the deterministic coarse grid; 0 disables.
  int grid_denominator = 14;
  /// Number of best grid points refined by local ascent.
  int grid_refine = 8;
  double fd_step = 1e-6;
  int max_iterations = 2000;
  /// |λ2 − λ3| below this triggers a random simplex perturbation instead of a
  /// gradient step.
  double crossing_gap = 1e-9;
  double crossing_noise = 1e-7;
  int threads = 1;
};

struct OptimizeResult {
  std::vector<double> weights;
  double sigma = 0.0;
  int starts = 0;
};

/// Multi-start projected finite-difference gradient ascent of σ over the
/// weight simplex. Deterministic for a fixed seed regardless of `threads`.
OptimizeResult maximize_sigma(const CandidateGraph& candidate, const OptimizeOptions& options = {});

/// Local ascent from one starting point (exposed for tests and benchmarks).
OptimizeResult ascend_sigma(const Graph& g, std::vector<double> start, const OptimizeOptions& options,
                            std::uint64_t noise_seed);

/// All points of the simplex grid {c/d : c ∈ ℕ^k, Σc = d}.
std::vector<std::vector<double>> simplex_grid(int k, int denominator);

}  // namespace ssc
