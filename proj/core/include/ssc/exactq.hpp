#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/matrix.hpp"

namespace ssc {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using MatrixQ = DenseMatrix<Rational>;
using SymMatQ = SymmetricMatrix<Rational>;

/// One term d * w * wᵀ of a rank-one decomposition.
struct RankOneTerm {
  RationalVector w;
  Rational d;
};

/// Outcome of an exact positive-semidefiniteness check.
///  - Psd: `decomposition` satisfies Q = Σ d_r w_r w_rᵀ exactly, all d_r > 0.
///  - NotPsd: `counterexample` z satisfies zᵀ Q z < 0 exactly.
struct PsdWitness {
  enum class Verdict { Psd, NotPsd };

  Verdict verdict = Verdict::Psd;
  std::vector<RankOneTerm> decomposition;
  RationalVector counterexample;

  bool psd() const noexcept { return verdict == Verdict::Psd; }
};

/// Symmetric-pivoted LDLᵀ elimination over ℚ. Pivots on the largest remaining
/// diagonal entry; a zero pivot is accepted only when the whole remaining
/// Schur complement is zero. On PSD the decomposition has already been
/// re-multiplied and compared against Q before returning.
PsdWitness ldl_psd_check(const SymMatQ& q);

/// True iff Σ d_r w_r w_rᵀ == q exactly.
bool reconstructs(const SymMatQ& q, std::span<const RankOneTerm> terms);

/// Best rational approximation p/q of `x` with 1 <= q <= max_den, taken from
/// the continued-fraction convergents and semiconvergents of the exact binary
/// value of x. Throws InputError for non-finite x or max_den < 1.
Rational rational_approx(double x, long max_den);

/// zᵀ Q z, exactly. Throws InputError on a dimension mismatch.
Rational q_eval(const SymMatQ& q, std::span<const Rational> z);

/// Parses "p/q", an integer, or a decimal such as "-0.125" or "1.5e-3" into an
/// exact rational (decimals are read exactly, not via double).
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0 and gcd(p,q) = 1, or "p" when q == 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// num/den in lowest terms (mpq_class(num, den) alone does not canonicalize).
/// Throws InputError when den == 0.
Rational frac(long num, long den);

}  // namespace ssc
