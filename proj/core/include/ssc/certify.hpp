#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssc/exactq.hpp"
#include "ssc/numerics.hpp"
#include "ssc/stepmodel.hpp"

namespace ssc {

/// One entry of a symmetry block of Q, as an affine function of the reduced
/// parameters: value = constant + coefficient * params[param] (param < 0 means
/// a constant entry).
struct ReducedEntry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;  // row <= col
  Rational constant;
  int param = -1;
  int coefficient = 0;
};

/// The matrix sum-of-squares feasibility problem for c·I − ψ(M*(x)), with
/// M*(x) = diag(x) A diag(x):
///
///   c·I − ψ(M*(x)) = V(x)ᵀ Q V(x) + (1 − ‖x‖²) T,   V(x) = (1, x) ⊗ I_m,
///
/// Q split into (k+1)² blocks Q_ab of size m = C(k,2). Matching coefficients
/// gives, with T = c·I − Q_00 eliminated,
///
///   Q_00 + Q_ii = c·I − A_ii ψ(E_ii)            (diagonal_rhs[i])
///   Q_0i + Q_i0 = 0
///   Q_ij + Q_ji = −A_ij ψ(E_ij + E_ji),  i < j   (pair_rhs)
///
/// Coordinate (a, P) of Q (block a, wedge pair P) carries the sign character
/// P △ {a} under x ↦ s∘x. The equations are invariant under that group, so a
/// feasible Q may be taken block diagonal over `classes`. The reduced
/// parameters are the diagonal of Q_00 (one per pair) plus one scalar per
/// entry pair (Q_ij[P,P'], Q_ij[P',P]) whose sum pair_rhs fixes.
struct SosProblem {
  CandidateGraph candidate;
  Rational bound;
  int k = 0;
  int m = 0;
  std::size_t dim_q = 0;

  std::vector<SymMatQ> diagonal_rhs;             // size k
  std::vector<MatrixQ> pair_rhs;                 // indexed by pair_index(k, i, j)
  std::vector<std::vector<std::size_t>> classes;  // full-Q coordinates per block
  std::vector<ReducedEntry> entries;
  std::size_t param_count = 0;

  std::size_t coordinate(int block, std::size_t pair) const { return static_cast<std::size_t>(block) * m + pair; }

  int diagonal_equations() const noexcept { return k; }
  int skew_conditions() const noexcept { return k; }
  int pair_equations() const noexcept { return k * (k - 1) / 2; }
};

SosProblem assemble(const CandidateGraph& candidate, const Rational& bound);

struct SolveOptions {
  double tol = 1e-9;
  int max_iter = 50000;
  std::uint64_t seed = 0;
  /// Amplitude of the seed-driven random starting point; 0 starts at zero.
  double jitter = 0.0;
  /// Target Q ⪰ margin·I first (budget max_iter/10), then fall back to 0.
  double margin = 1e-6;
  /// Douglas–Rachford relaxation in (0, 2).
  double relaxation = 1.0;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double affine_residual = 0.0;  // max |X_psd − X_affine|
  double min_eigenvalue = 0.0;   // of the returned (affine-feasible) Q
  double margin_used = 0.0;
  Matrix q;                      // full (k+1)m × (k+1)m, symmetrized
  Matrix t;                      // m × m
};

/// Douglas–Rachford splitting between the affine coefficient constraints
/// (closed-form blockwise averaging over the reduced parameters) and the PSD
/// cone (eigenvalue clipping per symmetry block). Not converging within
/// max_iter yields converged == false with the final residuals.
SolveReport sdp_solve(const SosProblem& problem, const SolveOptions& options = {});

struct Certificate {
  std::string candidate;
  Rational bound;
  int k = 0;
  int m = 0;
  SymMatQ q;
  SymMatQ t;
};

/// Rounds the free scalars of (Q_num, T_num) to rationals with denominator
/// <= max_den and rebuilds every dependent entry exactly, so the coefficient
/// identity holds over ℚ by construction. Free scalars: the upper triangle of
/// Q_00, the strict upper triangle of each skew Q_0i, and the strict upper
/// triangle of each Q_ij (i < j), whose mirror entry is pair_rhs minus it.
Certificate rationalize(const SosProblem& problem, const Matrix& q_num, const Matrix& t_num, long max_den);

struct IdentityViolation {
  std::string monomial;  // "1", "x3", "x2^2", "x1*x4" (1-based)
  std::size_t row = 0;
  std::size_t col = 0;
  Rational lhs;
  Rational rhs;
};

struct IdentityReport {
  bool holds = false;
  std::size_t violation_count = 0;
  std::vector<IdentityViolation> violations;  // first few only
};

/// Expands both sides as matrix polynomials of degree 2 in x and compares
/// every coefficient block exactly.
IdentityReport verify_identity(const Certificate& cert);

/// Exact PSD check of Q.
PsdWitness verify_psd(const Certificate& cert);

struct CertifyConfig {
  SolveOptions solve;
  long max_den = 10000;
  long max_den_cap = 1280000;
  int max_attempts = 4;
};

struct CertifyOutcome {
  std::optional<Certificate> certificate;
  std::string failed_stage;  // empty on success
  SolveReport last_solve;
  long max_den_used = 0;
  int attempts = 0;
  std::size_t psd_terms = 0;
};

/// assemble → sdp_solve → rationalize → verify_identity → verify_psd, retrying
/// with doubled max_den and a ten-fold tighter tolerance after a PSD failure.
CertifyOutcome certify(const CandidateGraph& candidate, const Rational& bound, const CertifyConfig& config = {});

/// diag(x) A diag(x).
SymMatF scaled_adjacency(const Graph& g, std::span<const double> x);

/// Numerical value of V(x)ᵀ Q V(x) + (1 − ‖x‖²) T.
SymMatF evaluate_sos(const Certificate& cert, std::span<const double> x);

/// Minimum over `samples` random unit vectors x of λ_min(c·I − ψ(M*(x))).
double sphere_min_eigenvalue(const CandidateGraph& candidate, const Rational& bound, int samples,
                             std::uint64_t seed);

/// Certificate text format: "candidate <name>", "bound p/q", "k m dimQ",
/// dimQ rows of Q, then m rows of T; rationals as "p/q" or integers.
void write_certificate(std::ostream& out, const Certificate& cert);
Certificate read_certificate(std::istream& in);

}  // namespace ssc
