#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ssc/certify.hpp"
#include "ssc/compound.hpp"
#include "ssc/error.hpp"
#include "support/convert.hpp"

using namespace ssc;

namespace {

const Rational kEightSevenths = frac(8, 7);

// The H6 certificate is shared by several tests.
const Certificate& h6_certificate() {
  static const Certificate cert = [] {
    const auto out = certify(candidate(CandidateName::H6), kEightSevenths);
    if (!out.certificate) throw std::runtime_error("H6 certification failed at " + out.failed_stage);
    return *out.certificate;
  }();
  return cert;
}

std::vector<double> unit_vector(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> x(k);
  double n = 0;
  for (auto& v : x) {
    v = g(rng);
    n += v * v;
  }
  for (auto& v : x) v /= std::sqrt(n);
  return x;
}

}  // namespace

TEST(Assemble, H6Dimensions) {
  const auto p = assemble(candidate(CandidateName::H6), kEightSevenths);
  EXPECT_EQ(p.k, 6);
  EXPECT_EQ(p.m, 15);
  EXPECT_EQ(p.dim_q, 105u);
  EXPECT_EQ(p.diagonal_equations(), 6);
  EXPECT_EQ(p.skew_conditions(), 6);
  EXPECT_EQ(p.pair_equations(), 15);
  EXPECT_EQ(p.diagonal_rhs.size(), 6u);
  EXPECT_EQ(p.pair_rhs.size(), 15u);
  EXPECT_EQ(p.param_count, 75u);
  std::map<std::size_t, int> sizes;
  std::size_t covered = 0;
  for (const auto& c : p.classes) {
    ++sizes[c.size()];
    covered += c.size();
  }
  EXPECT_EQ(covered, 105u);
  EXPECT_EQ(sizes[1], 15);
  EXPECT_EQ(sizes[3], 20);
  EXPECT_EQ(sizes[5], 6);
}

TEST(Assemble, RightHandSides) {
  const auto p = assemble(candidate(CandidateName::H6), kEightSevenths);
  // ψ(E_11) is diagonal with ones on the pairs that contain vertex 1.
  MatrixQ e11(6, 6);
  e11(0, 0) = 1;
  const MatrixQ psi11 = psi(e11);
  const auto pairs = lex_pairs(6);
  for (std::size_t a = 0; a < 15; ++a)
    for (std::size_t b = 0; b < 15; ++b)
      EXPECT_EQ(psi11(a, b), (a == b && pairs[a].first == 0) ? 1 : 0);
  for (std::size_t a = 0; a < 15; ++a)
    EXPECT_EQ(p.diagonal_rhs[0](a, a), kEightSevenths - (pairs[a].first == 0 ? 1 : 0));
  // 1 and 4 are not adjacent in H6, so that pair equation is homogeneous.
  const MatrixQ& r14 = p.pair_rhs[pair_index(6, 0, 3)];
  for (std::size_t a = 0; a < 15; ++a)
    for (std::size_t b = 0; b < 15; ++b) EXPECT_EQ(r14(a, b), 0);
}

TEST(Assemble, TwoVertexBase) {
  const auto p = assemble(candidate(CandidateName::K2), Rational(1));
  EXPECT_EQ(p.m, 1);
  EXPECT_EQ(p.dim_q, 3u);
  EXPECT_EQ(p.diagonal_rhs[0](0, 0), 0);
}

TEST(SdpSolve, TrivialProblem) {
  const auto p = assemble(candidate(CandidateName::K2), Rational(1));
  const auto r = sdp_solve(p);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 10);
  EXPECT_LE(max_abs(r.q), 1e-9);
  EXPECT_NEAR(r.t(0, 0), 1.0, 1e-9);
}

TEST(SdpSolve, H6AtEightSeventhsConverges) {
  const auto p = assemble(candidate(CandidateName::H6), kEightSevenths);
  const auto r = sdp_solve(p);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(r.affine_residual, 1e-9);
  EXPECT_GE(r.min_eigenvalue, -1e-9);
}

TEST(SdpSolve, H6BelowTheMaximumStalls) {
  SolveOptions o;
  o.max_iter = 5000;
  const auto r = sdp_solve(assemble(candidate(CandidateName::H6), frac(9, 8)), o);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.affine_residual, 1e-3);
}

TEST(SdpSolve, RejectsBadOptions) {
  const auto p = assemble(candidate(CandidateName::K2), Rational(1));
  SolveOptions o;
  o.tol = 0;
  EXPECT_THROW(sdp_solve(p, o), InputError);
  o.tol = 1e-9;
  o.max_iter = 0;
  EXPECT_THROW(sdp_solve(p, o), InputError);
}

TEST(Rationalize, TrivialProblemIsExact) {
  const auto p = assemble(candidate(CandidateName::K2), Rational(1));
  for (long den : {1L, 7L, 10000L}) {
    const auto c = rationalize(p, Matrix(3, 3), Matrix(1, 1, 1.0), den);
    EXPECT_TRUE(c.q == SymMatQ(3));
    EXPECT_EQ(c.t(0, 0), 1);
  }
}

TEST(Rationalize, RoundsToConvergent) {
  const auto p = assemble(candidate(CandidateName::P3), kEightSevenths);
  Matrix q(p.dim_q, p.dim_q);
  q(0, 0) = 1.14285714;
  const auto c = rationalize(p, q, Matrix(3, 3), 50);
  EXPECT_EQ(c.q(0, 0), kEightSevenths);
  EXPECT_EQ(c.t(0, 0), 0);
}

TEST(RationalizeProperty, IdentityHoldsForArbitraryInput) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto name : all_candidates()) {
    const auto p = assemble(candidate(name), frac(static_cast<long>(rng() % 20) + 1, 7));
    for (int t = 0; t < 3; ++t) {
      Matrix q(p.dim_q, p.dim_q);
      for (std::size_t i = 0; i < p.dim_q; ++i)
        for (std::size_t j = 0; j < p.dim_q; ++j) q(i, j) = u(rng);
      const auto c = rationalize(p, q, Matrix(p.m, p.m), 1 + static_cast<long>(rng() % 1000));
      EXPECT_TRUE(verify_identity(c).holds) << to_string(name);
    }
  }
}

TEST(Rationalize, RejectsWrongShapes) {
  const auto p = assemble(candidate(CandidateName::P3), kEightSevenths);
  EXPECT_THROW(rationalize(p, Matrix(11, 11), Matrix(3, 3), 10), InputError);
  EXPECT_THROW(rationalize(p, Matrix(12, 12), Matrix(2, 2), 10), InputError);
}

TEST(VerifyIdentity, ZeroQFailsForH6) {
  Certificate c;
  c.candidate = "H6";
  c.bound = kEightSevenths;
  c.k = 6;
  c.m = 15;
  c.q = SymMatQ(105);
  c.t = SymMatQ::identity(15);
  const auto r = verify_identity(c);
  EXPECT_FALSE(r.holds);
  EXPECT_GT(r.violation_count, 0u);
}

TEST(VerifyIdentity, ShapeMismatchFails) {
  Certificate c = h6_certificate();
  c.candidate = "H5";
  EXPECT_FALSE(verify_identity(c).holds);
}

TEST(Certify, H6EndToEnd) {
  const auto& c = h6_certificate();
  EXPECT_EQ(c.q.dim(), 105u);
  EXPECT_EQ(c.t.dim(), 15u);
  EXPECT_TRUE(verify_identity(c).holds);
  const auto w = verify_psd(c);
  ASSERT_TRUE(w.psd());
  EXPECT_TRUE(reconstructs(c.q, w.decomposition));
}

TEST(Certify, SmallerCandidatesAtEightSevenths) {
  for (auto name : {CandidateName::P3, CandidateName::P4, CandidateName::H5}) {
    const auto out = certify(candidate(name), kEightSevenths);
    ASSERT_TRUE(out.certificate.has_value()) << to_string(name);
    const int k = candidate(name).order();
    EXPECT_EQ(out.certificate->q.dim(), static_cast<std::size_t>((k + 1) * k * (k - 1) / 2));
    EXPECT_TRUE(verify_identity(*out.certificate).holds);
    EXPECT_TRUE(verify_psd(*out.certificate).psd());
  }
}

TEST(Certify, TwoVertexBaseIsTrivial) {
  const auto out = certify(candidate(CandidateName::K2), Rational(1));
  ASSERT_TRUE(out.certificate.has_value());
  EXPECT_TRUE(out.certificate->q == SymMatQ(3));
  EXPECT_EQ(out.certificate->t(0, 0), 1);
}

TEST(Certify, BelowMaximumIsNotFound) {
  CertifyConfig cfg;
  cfg.solve.max_iter = 3000;
  const auto out = certify(candidate(CandidateName::H6), frac(9, 8), cfg);
  EXPECT_FALSE(out.certificate.has_value());
  EXPECT_EQ(out.failed_stage, "sdp_solve");
  EXPECT_GT(out.last_solve.affine_residual, 1e-3);
}

TEST(CertifyNegative, PerturbedEntryBreaksIdentity) {
  const auto& base = h6_certificate();
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    Certificate c = base;
    const std::size_t i = rng() % 105, j = rng() % 105;
    c.q.set(i, j, c.q(i, j) + frac(1, 1000000));
    const auto r = verify_identity(c);
    EXPECT_FALSE(r.holds);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_NE(r.violations.front().lhs, r.violations.front().rhs);
  }
  Certificate c = base;
  c.t.set(3, 4, c.t(3, 4) + frac(1, 1000000));
  EXPECT_FALSE(verify_identity(c).holds);
}

TEST(CertifyNegative, ShiftedQIsNotPsd) {
  Certificate c = h6_certificate();
  for (std::size_t i = 0; i < 105; ++i) c.q.set(i, i, c.q(i, i) - frac(1, 1000));
  const auto w = verify_psd(c);
  ASSERT_FALSE(w.psd());
  EXPECT_LT(q_eval(c.q, w.counterexample), 0);
}

TEST(CertifyProperty, SosValueMatchesLeftSideEverywhere) {
  const auto& c = h6_certificate();
  const auto h6 = candidate(CandidateName::H6);
  std::mt19937_64 rng(35);
  std::normal_distribution<double> g(0.0, 0.7);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(6);
    for (auto& v : x) v = g(rng);
    const SymMatF rhs = evaluate_sos(c, x);
    const Matrix lhs = Matrix::identity(15) * (8.0 / 7) - psi(scaled_adjacency(h6.graph, x).dense());
    EXPECT_LE(max_abs(lhs - rhs.dense()), 1e-12);
  }
}

TEST(CertifyProperty, SoundOnTheSphere) {
  h6_certificate();
  EXPECT_GE(sphere_min_eigenvalue(candidate(CandidateName::H6), kEightSevenths, 1000, 37), -1e-9);
  // With c = 1 the bound fails somewhere on the sphere.
  EXPECT_LT(sphere_min_eigenvalue(candidate(CandidateName::H6), Rational(1), 2000, 37), 0.0);
}

TEST(CertifyProperty, SquareRootWeightsBridgeToStepModel) {
  std::mt19937_64 rng(39);
  for (auto name : all_candidates()) {
    const auto c = candidate(name);
    for (int t = 0; t < 100 / 5; ++t) {
      const auto u = oracle::random_simplex(c.order(), rng);
      std::vector<double> x(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = std::sqrt(u[i]);
      const auto ev = eigvalsh(scaled_adjacency(c.graph, x));
      EXPECT_NEAR(ev[0] + ev[1], sigma(StepModel(c, u)), 1e-9);
    }
  }
}

TEST(CertificateIo, RoundTrip) {
  const auto& c = h6_certificate();
  std::stringstream s;
  write_certificate(s, c);
  const Certificate back = read_certificate(s);
  EXPECT_EQ(back.candidate, "H6");
  EXPECT_EQ(back.bound, kEightSevenths);
  EXPECT_TRUE(back.q == c.q);
  EXPECT_TRUE(back.t == c.t);
}

TEST(CertificateIo, ParseErrors) {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_certificate(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0 0\n0 0 0\n1\n"), -1);
  EXPECT_EQ(line_of("candidat K2\n"), 1);
  EXPECT_EQ(line_of("candidate Q9\n"), 1);
  EXPECT_EQ(line_of("candidate K2\nbound 1/0\n"), 2);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 4\n"), 3);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n3 3 12\n"), 3);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0 x\n"), 5);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0\n"), 5);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 1 0\n0 0 0\n0 0 0\n1\n"), 5);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0 0\n0 0 0\n"), 7);
  EXPECT_EQ(line_of("candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0 0\n0 0 0\n1\nextra\n"), 8);
}
