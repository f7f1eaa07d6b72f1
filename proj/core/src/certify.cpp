#include "ssc/certify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ssc/compound.hpp"
#include "ssc/error.hpp"

namespace ssc {
namespace {

MatrixQ unit_matrix(int k, int i, int j) {
  MatrixQ e(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  e(i, j) = 1;
  return e;
}

// ---------------------------------------------------------------------------
// Floating-point view of the reduced problem used by the solver.

struct FloatEntry {
  std::size_t block;
  std::size_t row;
  std::size_t col;
  double constant;
  int param;
  double coefficient;
  double weight;  // 1 on the diagonal, 2 off it (the entry appears twice)
};

class ReducedSpace {
 public:
  explicit ReducedSpace(const SosProblem& p) : problem_(p), params_(p.param_count) {
    for (const auto& e : p.entries)
      entries_.push_back({e.block, e.row, e.col, to_double(e.constant), e.param, static_cast<double>(e.coefficient),
                          e.row == e.col ? 1.0 : 2.0});
    std::vector<double> norm(params_, 0.0);
    for (const auto& e : entries_)
      if (e.param >= 0) norm[e.param] += e.weight * e.coefficient * e.coefficient;
    inverse_norm_.resize(params_);
    for (std::size_t i = 0; i < params_; ++i) inverse_norm_[i] = norm[i] > 0.0 ? 1.0 / norm[i] : 0.0;
  }

  std::vector<Matrix> zero_blocks() const {
    std::vector<Matrix> out;
    for (const auto& cls : problem_.classes) out.emplace_back(cls.size(), cls.size());
    return out;
  }

  std::vector<Matrix> build(const std::vector<double>& theta) const {
    auto out = zero_blocks();
    for (const auto& e : entries_) {
      const double v = e.constant + (e.param >= 0 ? e.coefficient * theta[e.param] : 0.0);
      out[e.block](e.row, e.col) = v;
      out[e.block](e.col, e.row) = v;
    }
    return out;
  }

  // Least-squares fit of the parameters to arbitrary blocks; every parameter
  // enters its own set of entries, so the fit separates per parameter.
  std::vector<double> fit(const std::vector<Matrix>& y) const {
    std::vector<double> theta(params_, 0.0);
    for (const auto& e : entries_)
      if (e.param >= 0) theta[e.param] += e.weight * e.coefficient * (y[e.block](e.row, e.col) - e.constant);
    for (std::size_t i = 0; i < params_; ++i) theta[i] *= inverse_norm_[i];
    return theta;
  }

  Matrix assemble_q(const std::vector<Matrix>& blocks) const {
    Matrix q(problem_.dim_q, problem_.dim_q);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& coords = problem_.classes[b];
      for (std::size_t r = 0; r < coords.size(); ++r)
        for (std::size_t s = 0; s < coords.size(); ++s) q(coords[r], coords[s]) = blocks[b](r, s);
    }
    return q;
  }

 private:
  const SosProblem& problem_;
  std::size_t params_;
  std::vector<FloatEntry> entries_;
  std::vector<double> inverse_norm_;
};

SymMatF as_symmetric(const Matrix& m) {
  SymMatF s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, m(i, j));
  return s;
}

Matrix project_psd(const Matrix& y, double margin) {
  const std::size_t n = y.rows();
  SymMatF shifted = as_symmetric(y);
  for (std::size_t i = 0; i < n; ++i) shifted.set(i, i, shifted(i, i) - margin);
  const auto dec = eigh(shifted);
  Matrix out(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double lambda = std::max(dec.eigenvalues[c], 0.0);
    if (lambda == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lambda * dec.eigenvectors(i, c) * dec.eigenvectors(j, c);
  }
  for (std::size_t i = 0; i < n; ++i) out(i, i) += margin;
  return out;
}

double min_block_eigenvalue(const std::vector<Matrix>& blocks) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) lo = std::min(lo, eigvalsh(as_symmetric(b)).back());
  return lo;
}

SolveReport run_douglas_rachford(const SosProblem& problem, const ReducedSpace& space, const SolveOptions& options,
                                 double margin, int max_iter) {
  auto z = space.zero_blocks();
  if (options.jitter > 0.0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto& b : z)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = i; j < b.cols(); ++j) b(i, j) = b(j, i) = options.jitter * unit(rng);
  }

  SolveReport report;
  report.margin_used = margin;
  std::vector<Matrix> x_affine;
  for (int it = 1; it <= max_iter; ++it) {
    x_affine = space.build(space.fit(z));
    double residual = 0.0;
    for (std::size_t b = 0; b < z.size(); ++b) {
      Matrix reflected = x_affine[b] * 2.0 - z[b];
      const Matrix x_psd = project_psd(reflected, margin);
      for (std::size_t i = 0; i < x_psd.rows(); ++i)
        for (std::size_t j = 0; j < x_psd.cols(); ++j) {
          const double gap = x_psd(i, j) - x_affine[b](i, j);
          residual = std::max(residual, std::abs(gap));
          z[b](i, j) += options.relaxation * gap;
        }
    }
    report.iterations = it;
    report.affine_residual = residual;
    if (residual < options.tol) {
      x_affine = space.build(space.fit(z));
      report.min_eigenvalue = min_block_eigenvalue(x_affine);
      if (report.min_eigenvalue >= -options.tol) {
        report.converged = true;
        break;
      }
    }
  }
  if (!report.converged) {
    x_affine = space.build(space.fit(z));
    report.min_eigenvalue = min_block_eigenvalue(x_affine);
  }

  report.q = space.assemble_q(x_affine);
  const double c = to_double(problem.bound);
  report.t = Matrix(static_cast<std::size_t>(problem.m), static_cast<std::size_t>(problem.m));
  for (int r = 0; r < problem.m; ++r)
    for (int s = 0; s < problem.m; ++s) report.t(r, s) = (r == s ? c : 0.0) - report.q(r, s);
  return report;
}

std::string monomial_name(int i, int j) {
  // i, j are 0-based vertex indices or -1 for the constant slot.
  if (i < 0 && j < 0) return "1";
  if (i < 0) return "x" + std::to_string(j + 1);
  if (i == j) return "x" + std::to_string(i + 1) + "^2";
  return "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
}

}  // namespace

SosProblem assemble(const CandidateGraph& candidate, const Rational& bound) {
  SosProblem p;
  p.candidate = candidate;
  p.bound = bound;
  p.k = candidate.order();
  if (p.k < 2) throw InputError("assemble: candidate needs at least two vertices");
  p.m = p.k * (p.k - 1) / 2;
  p.dim_q = static_cast<std::size_t>(p.k + 1) * p.m;
  const auto& g = candidate.graph;
  const auto pairs = lex_pairs(p.k);

  for (int i = 0; i < p.k; ++i) {
    const MatrixQ psi_ii = psi(unit_matrix(p.k, i, i));
    SymMatQ rhs(static_cast<std::size_t>(p.m));
    const Rational a_ii = g.has_edge(i, i) ? 1 : 0;
    for (int r = 0; r < p.m; ++r)
      for (int s = r; s < p.m; ++s) rhs.set(r, s, (r == s ? bound : Rational(0)) - a_ii * psi_ii(r, s));
    p.diagonal_rhs.push_back(std::move(rhs));
  }
  for (auto [i, j] : pairs) {
    MatrixQ e = unit_matrix(p.k, i, j);
    e(j, i) = 1;
    MatrixQ rhs = psi(e);
    rhs *= Rational(g.has_edge(i, j) ? -1 : 0);
    p.pair_rhs.push_back(std::move(rhs));
  }

  // Symmetry classes keyed by the character bitmask P △ {a}.
  std::map<unsigned, std::size_t> class_of_character;
  std::vector<std::pair<std::size_t, std::size_t>> slot(p.dim_q);  // coordinate -> (block, local)
  for (int a = 0; a <= p.k; ++a)
    for (int pi = 0; pi < p.m; ++pi) {
      unsigned ch = (1U << pairs[pi].first) | (1U << pairs[pi].second);
      if (a > 0) ch ^= 1U << (a - 1);
      auto [it, inserted] = class_of_character.try_emplace(ch, p.classes.size());
      if (inserted) p.classes.emplace_back();
      const std::size_t coord = p.coordinate(a, static_cast<std::size_t>(pi));
      slot[coord] = {it->second, p.classes[it->second].size()};
      p.classes[it->second].push_back(coord);
    }

  auto add_entry = [&](std::size_t c1, std::size_t c2, Rational constant, int param, int coefficient) {
    if (slot[c1].first != slot[c2].first) throw std::logic_error("assemble: entry crosses symmetry classes");
    ReducedEntry e;
    e.block = slot[c1].first;
    e.row = std::min(slot[c1].second, slot[c2].second);
    e.col = std::max(slot[c1].second, slot[c2].second);
    e.constant = std::move(constant);
    e.param = param;
    e.coefficient = coefficient;
    p.entries.push_back(std::move(e));
  };

  // Diagonal of Q_00 and the dependent diagonals of Q_ii.
  for (int pi = 0; pi < p.m; ++pi) {
    add_entry(p.coordinate(0, pi), p.coordinate(0, pi), 0, pi, 1);
    for (int a = 1; a <= p.k; ++a)
      add_entry(p.coordinate(a, pi), p.coordinate(a, pi), p.diagonal_rhs[a - 1](pi, pi), pi, -1);
  }
  int next_param = p.m;
  for (std::size_t pr = 0; pr < pairs.size(); ++pr) {
    const auto [i, j] = pairs[pr];
    for (int c = 0; c < p.k; ++c) {
      if (c == i || c == j) continue;
      const std::size_t p1 = pair_index(p.k, i, c);
      const std::size_t p2 = pair_index(p.k, j, c);
      const Rational& f = p.pair_rhs[pr](p1, p2);
      add_entry(p.coordinate(i + 1, p1), p.coordinate(j + 1, p2), 0, next_param, 1);
      add_entry(p.coordinate(i + 1, p2), p.coordinate(j + 1, p1), f, next_param, -1);
      ++next_param;
    }
  }
  p.param_count = static_cast<std::size_t>(next_param);

  // The right-hand sides must live on the entries parametrized above.
  for (int i = 0; i < p.k; ++i)
    for (int r = 0; r < p.m; ++r)
      for (int s = 0; s < p.m; ++s)
        if (r != s && sgn(p.diagonal_rhs[i](r, s)) != 0) throw std::logic_error("assemble: psi(E_ii) not diagonal");
  for (std::size_t pr = 0; pr < pairs.size(); ++pr)
    for (int r = 0; r < p.m; ++r)
      for (int s = 0; s < p.m; ++s) {
        if (sgn(p.pair_rhs[pr](r, s)) == 0) continue;
        const unsigned pr_bits = (1U << pairs[r].first) ^ (1U << pairs[r].second) ^ (1U << pairs[s].first) ^
                                 (1U << pairs[s].second);
        const unsigned ij_bits = (1U << pairs[pr].first) | (1U << pairs[pr].second);
        if (pr_bits != ij_bits) throw std::logic_error("assemble: pair right-hand side outside the parametrization");
      }
  return p;
}

SolveReport sdp_solve(const SosProblem& problem, const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("sdp_solve: tol must be positive");
  if (options.max_iter < 1) throw InputError("sdp_solve: max_iter must be positive");
  const ReducedSpace space(problem);
  if (options.margin > 0.0) {
    auto strict = run_douglas_rachford(problem, space, options, options.margin, std::max(1, options.max_iter / 10));
    if (strict.converged) return strict;
  }
  return run_douglas_rachford(problem, space, options, 0.0, options.max_iter);
}

Certificate rationalize(const SosProblem& problem, const Matrix& q_num, const Matrix& t_num, long max_den) {
  const std::size_t mq = static_cast<std::size_t>(problem.m);
  if (q_num.rows() != problem.dim_q || q_num.cols() != problem.dim_q)
    throw InputError("rationalize: Q has the wrong shape");
  if (t_num.rows() != mq || t_num.cols() != mq) throw InputError("rationalize: T has the wrong shape");
  const SymMatF qs = symmetrize(q_num);
  auto round = [&](double v) { return rational_approx(v, max_den); };
  auto at = [&](int block, std::size_t pair) { return problem.coordinate(block, pair); };

  Certificate cert;
  cert.candidate = to_string(problem.candidate.name);
  cert.bound = problem.bound;
  cert.k = problem.k;
  cert.m = problem.m;
  cert.q = SymMatQ(problem.dim_q);
  cert.t = SymMatQ(mq);

  for (std::size_t r = 0; r < mq; ++r)
    for (std::size_t s = r; s < mq; ++s) cert.q.set(at(0, r), at(0, s), round(qs(at(0, r), at(0, s))));

  for (int i = 1; i <= problem.k; ++i)
    for (std::size_t r = 0; r < mq; ++r)
      for (std::size_t s = r + 1; s < mq; ++s) {
        const Rational v = round(qs(at(0, r), at(i, s)));
        cert.q.set(at(0, r), at(i, s), v);
        cert.q.set(at(0, s), at(i, r), -v);
      }

  const auto pairs = lex_pairs(problem.k);
  for (std::size_t pr = 0; pr < pairs.size(); ++pr) {
    const int i = pairs[pr].first + 1;
    const int j = pairs[pr].second + 1;
    const MatrixQ& rhs = problem.pair_rhs[pr];
    for (std::size_t r = 0; r < mq; ++r) {
      cert.q.set(at(i, r), at(j, r), rhs(r, r) / 2);
      for (std::size_t s = r + 1; s < mq; ++s) {
        const Rational v = round(qs(at(i, r), at(j, s)));
        cert.q.set(at(i, r), at(j, s), v);
        cert.q.set(at(i, s), at(j, r), rhs(r, s) - v);
      }
    }
  }

  for (int i = 1; i <= problem.k; ++i)
    for (std::size_t r = 0; r < mq; ++r)
      for (std::size_t s = r; s < mq; ++s)
        cert.q.set(at(i, r), at(i, s), problem.diagonal_rhs[i - 1](r, s) - cert.q(at(0, r), at(0, s)));

  for (std::size_t r = 0; r < mq; ++r)
    for (std::size_t s = r; s < mq; ++s)
      cert.t.set(r, s, (r == s ? problem.bound : Rational(0)) - cert.q(at(0, r), at(0, s)));
  return cert;
}

IdentityReport verify_identity(const Certificate& cert) {
  constexpr std::size_t kMaxReported = 16;
  IdentityReport report;
  const CandidateGraph cand = candidate(cert.candidate);
  const int k = cand.order();
  const std::size_t m = static_cast<std::size_t>(k) * (k - 1) / 2;
  if (cert.k != k || cert.m != static_cast<int>(m) || cert.q.dim() != (k + 1) * m || cert.t.dim() != m) {
    report.holds = false;
    report.violation_count = 1;
    report.violations.push_back({"shape", 0, 0, Rational(0), Rational(0)});
    return report;
  }
  const auto& g = cand.graph;
  auto q_block = [&](int a, int b, std::size_t r, std::size_t s) -> const Rational& {
    return cert.q(a * m + r, b * m + s);
  };
  auto record = [&](int i, int j, std::size_t r, std::size_t s, const Rational& lhs, const Rational& rhs) {
    if (lhs == rhs) return;
    ++report.violation_count;
    if (report.violations.size() < kMaxReported) report.violations.push_back({monomial_name(i, j), r, s, lhs, rhs});
  };

  // Left side: c·I − ψ(M*(x)) = c·I − Σ x_i² A_ii ψ(E_ii) − Σ_{i<j} x_i x_j A_ij ψ(E_ij + E_ji).
  // Right side: Q_00 + Σ x_i (Q_0i + Q_i0) + Σ x_i² (Q_ii − T) + Σ_{i<j} x_i x_j (Q_ij + Q_ji) + T.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      record(-1, -1, r, s, r == s ? cert.bound : Rational(0), q_block(0, 0, r, s) + cert.t(r, s));
      for (int i = 0; i < k; ++i) record(-1, i, r, s, Rational(0), q_block(0, i + 1, r, s) + q_block(i + 1, 0, r, s));
    }
  for (int i = 0; i < k; ++i) {
    const MatrixQ psi_ii = psi(unit_matrix(k, i, i));
    const Rational a_ii = g.has_edge(i, i) ? 1 : 0;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; s < m; ++s)
        record(i, i, r, s, -a_ii * psi_ii(r, s), q_block(i + 1, i + 1, r, s) - cert.t(r, s));
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      MatrixQ e = unit_matrix(k, i, j);
      e(j, i) = 1;
      const MatrixQ psi_ij = psi(e);
      const Rational a_ij = g.has_edge(i, j) ? 1 : 0;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s)
          record(i, j, r, s, -a_ij * psi_ij(r, s), q_block(i + 1, j + 1, r, s) + q_block(j + 1, i + 1, r, s));
    }
  report.holds = report.violation_count == 0;
  return report;
}

PsdWitness verify_psd(const Certificate& cert) { return ldl_psd_check(cert.q); }

CertifyOutcome certify(const CandidateGraph& candidate, const Rational& bound, const CertifyConfig& config) {
  CertifyOutcome outcome;
  const SosProblem problem = assemble(candidate, bound);
  SolveOptions solve = config.solve;
  long max_den = config.max_den;

  for (int attempt = 0; attempt < std::max(1, config.max_attempts); ++attempt) {
    outcome.attempts = attempt + 1;
    if (attempt > 0) {
      solve.tol = std::max(solve.tol / 10.0, 1e-13);
      solve.seed = config.solve.seed + static_cast<std::uint64_t>(attempt);
      solve.jitter = std::max(solve.jitter, 1e-3);
    }
    outcome.last_solve = sdp_solve(problem, solve);
    if (!outcome.last_solve.converged) {
      outcome.failed_stage = "sdp_solve";
      return outcome;
    }

    outcome.max_den_used = max_den;
    Certificate cert = rationalize(problem, outcome.last_solve.q, outcome.last_solve.t, max_den);
    if (!verify_identity(cert).holds) {
      outcome.failed_stage = "verify_identity";
      return outcome;
    }
    const PsdWitness witness = verify_psd(cert);
    if (witness.psd()) {
      outcome.psd_terms = witness.decomposition.size();
      outcome.certificate = std::move(cert);
      outcome.failed_stage.clear();
      return outcome;
    }
    outcome.failed_stage = "verify_psd";
    if (max_den >= config.max_den_cap) break;
    max_den = std::min(max_den * 2, config.max_den_cap);
  }
  return outcome;
}

SymMatF scaled_adjacency(const Graph& g, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(g.order())) throw InputError("scaled_adjacency: length mismatch");
  SymMatF m(x.size());
  for (auto [i, j] : g.edges()) m.set(i, j, x[i] * x[j]);
  return m;
}

SymMatF evaluate_sos(const Certificate& cert, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(cert.k)) throw InputError("evaluate_sos: length mismatch");
  const std::size_t m = static_cast<std::size_t>(cert.m);
  std::vector<double> hat(1, 1.0);
  hat.insert(hat.end(), x.begin(), x.end());
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  SymMatF out(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r; s < m; ++s) {
      double v = (1.0 - norm2) * to_double(cert.t(r, s));
      for (std::size_t a = 0; a < hat.size(); ++a)
        for (std::size_t b = 0; b < hat.size(); ++b) {
          const Rational& q = cert.q(a * m + r, b * m + s);
          if (sgn(q) != 0) v += hat[a] * hat[b] * to_double(q);
        }
      out.set(r, s, v);
    }
  return out;
}

double sphere_min_eigenvalue(const CandidateGraph& candidate, const Rational& bound, int samples,
                             std::uint64_t seed) {
  const int k = candidate.order();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double c = to_double(bound);
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> x(static_cast<std::size_t>(k));
  for (int s = 0; s < samples; ++s) {
    double norm = 0.0;
    for (auto& v : x) {
      v = gauss(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    const Matrix p = psi(scaled_adjacency(candidate.graph, x).dense());
    SymMatF gap(p.rows());
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t t = r; t < p.cols(); ++t) gap.set(r, t, (r == t ? c : 0.0) - p(r, t));
    worst = std::min(worst, eigvalsh(gap).back());
  }
  return worst;
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "candidate " << cert.candidate << '\n';
  out << "bound " << to_string(cert.bound) << '\n';
  out << cert.k << ' ' << cert.m << ' ' << cert.q.dim() << '\n';
  auto dump = [&](const SymMatQ& s) {
    for (std::size_t r = 0; r < s.dim(); ++r) {
      for (std::size_t c = 0; c < s.dim(); ++c) out << (c ? " " : "") << to_string(s(r, c));
      out << '\n';
    }
  };
  dump(cert.q);
  dump(cert.t);
}

Certificate read_certificate(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, std::string("unexpected end of file, expected ") + what);
    ++line_no;
  };

  Certificate cert;
  std::string key, extra;
  next("candidate line");
  {
    std::istringstream row(line);
    if (!(row >> key >> cert.candidate) || key != "candidate" || (row >> extra))
      throw ParseError(line_no, "expected 'candidate <name>'");
    try {
      candidate(cert.candidate);
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  next("bound line");
  {
    std::istringstream row(line);
    std::string value;
    if (!(row >> key >> value) || key != "bound" || (row >> extra)) throw ParseError(line_no, "expected 'bound p/q'");
    try {
      cert.bound = parse_rational(value);
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  next("dimension line");
  long dim_q = 0;
  {
    std::istringstream row(line);
    if (!(row >> cert.k >> cert.m >> dim_q) || (row >> extra)) throw ParseError(line_no, "expected 'k m dimQ'");
    if (cert.k < 2 || cert.m != cert.k * (cert.k - 1) / 2 || dim_q != static_cast<long>(cert.k + 1) * cert.m)
      throw ParseError(line_no, "inconsistent dimensions: need m = k(k-1)/2 and dimQ = (k+1)m");
    if (candidate(cert.candidate).order() != cert.k)
      throw ParseError(line_no, "k does not match the order of candidate " + cert.candidate);
  }

  auto read_square = [&](std::size_t n, const char* name) {
    MatrixQ dense(n, n);
    std::vector<int> row_line(n);
    for (std::size_t r = 0; r < n; ++r) {
      next(name);
      row_line[r] = line_no;
      std::istringstream row(line);
      std::string tok;
      std::size_t c = 0;
      while (row >> tok) {
        if (c == n) throw ParseError(line_no, std::string("too many entries in a row of ") + name);
        try {
          dense(r, c++) = parse_rational(tok);
        } catch (const InputError& e) {
          throw ParseError(line_no, e.what());
        }
      }
      if (c != n) throw ParseError(line_no, std::string("too few entries in a row of ") + name);
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c)
        if (dense(r, c) != dense(c, r))
          throw ParseError(row_line[c], std::string(name) + " is not symmetric at (" + std::to_string(r + 1) + "," +
                                            std::to_string(c + 1) + ")");
    return SymMatQ::from_dense(dense);
  };
  cert.q = read_square(static_cast<std::size_t>(dim_q), "Q");
  cert.t = read_square(static_cast<std::size_t>(cert.m), "T");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError(line_no, "trailing content");
  }
  return cert;
}

}  // namespace ssc
