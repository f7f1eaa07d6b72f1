#include "ssc/exactq.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <optional>

#include "ssc/error.hpp"

namespace ssc {
namespace {

// Index into `remaining` of the largest diagonal entry of the working matrix.
std::size_t max_diagonal(const MatrixQ& s, const std::vector<std::size_t>& remaining) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < remaining.size(); ++r)
    if (s(remaining[r], remaining[r]) > s(remaining[best], remaining[best])) best = r;
  return best;
}

// Extends a vector `y` supported on the not-yet-eliminated indices to a full
// vector z with w_rᵀ z = 0 for every eliminated term, so that
// zᵀ Q z = yᵀ S y where S is the current Schur complement.
RationalVector lift_through_eliminated(const std::vector<RankOneTerm>& terms,
                                       const std::vector<std::size_t>& pivots, RationalVector z) {
  for (std::size_t t = terms.size(); t-- > 0;) {
    const std::size_t p = pivots[t];
    Rational acc = 0;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != p && sgn(terms[t].w[j]) != 0) acc += terms[t].w[j] * z[j];
    z[p] = -acc;
  }
  return z;
}

}  // namespace

PsdWitness ldl_psd_check(const SymMatQ& q) {
  const std::size_t n = q.dim();
  MatrixQ s = q.dense();
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

  PsdWitness out;
  std::vector<std::size_t> pivots;

  auto fail_with = [&](RationalVector y) {
    out.verdict = PsdWitness::Verdict::NotPsd;
    out.counterexample = lift_through_eliminated(out.decomposition, pivots, std::move(y));
    out.decomposition.clear();
    return out;
  };

  while (!remaining.empty()) {
    const std::size_t slot = max_diagonal(s, remaining);
    const std::size_t p = remaining[slot];
    const Rational pivot = s(p, p);

    if (sgn(pivot) < 0) {
      RationalVector y(n, 0);
      y[p] = 1;
      return fail_with(std::move(y));
    }

    if (sgn(pivot) == 0) {
      // The maximum is 0; a negative diagonal entry is a direct witness.
      for (std::size_t a : remaining)
        if (sgn(s(a, a)) < 0) {
          RationalVector y(n, 0);
          y[a] = 1;
          return fail_with(std::move(y));
        }
      for (std::size_t a : remaining)
        for (std::size_t b : remaining) {
          if (a == b || sgn(s(a, b)) == 0) continue;
          // Zero diagonal with a nonzero coupling: the 2x2 principal minor
          // [[0, x], [x, 0]] is indefinite.
          RationalVector y(n, 0);
          y[a] = 1;
          y[b] = sgn(s(a, b)) > 0 ? -1 : 1;
          return fail_with(std::move(y));
        }
      break;  // the remaining Schur complement is identically zero
    }

    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    RankOneTerm term;
    term.d = pivot;
    term.w.assign(n, 0);
    term.w[p] = 1;
    for (std::size_t i : remaining)
      if (sgn(s(i, p)) != 0) term.w[i] = s(i, p) / pivot;

    for (std::size_t i : remaining) {
      if (sgn(s(i, p)) == 0) continue;
      const Rational sip = s(i, p);
      for (std::size_t j : remaining) {
        if (sgn(term.w[j]) == 0) continue;
        s(i, j) -= sip * term.w[j];
      }
    }
    out.decomposition.push_back(std::move(term));
    pivots.push_back(p);
  }

  if (!reconstructs(q, out.decomposition))
    throw std::logic_error("ldl_psd_check: decomposition failed exact re-multiplication");
  return out;
}

bool reconstructs(const SymMatQ& q, std::span<const RankOneTerm> terms) {
  const std::size_t n = q.dim();
  MatrixQ acc(n, n);
  for (const auto& t : terms) {
    if (t.w.size() != n) return false;
    if (sgn(t.d) < 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(t.w[i]) == 0) continue;
      const Rational di = t.d * t.w[i];
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(t.w[j]) != 0) acc(i, j) += di * t.w[j];
    }
  }
  return acc == q.dense();
}

Rational rational_approx(double x, long max_den) {
  if (!std::isfinite(x)) throw InputError("rational_approx: non-finite input");
  if (max_den < 1) throw InputError("rational_approx: max_den must be positive");

  const Rational exact(x);  // doubles are dyadic rationals, so this is exact
  if (exact.get_den() <= max_den) return exact;

  // Convergents p_k/q_k of the continued fraction of `exact`, stopping before
  // the denominator bound is exceeded; then compare the last convergent with
  // the best admissible semiconvergent.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  const mpz_class bound = max_den;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const mpz_class q2 = q0 + a * q1;
    if (q2 > bound) break;
    const mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const mpz_class rem = num - a * den;
    num = den;
    den = rem;
    if (den == 0) break;
  }
  const mpz_class k = (bound - q0) / q1;
  Rational semi(mpz_class(p0 + k * p1), mpz_class(q0 + k * q1));
  semi.canonicalize();
  const Rational conv(p1, q1);
  Rational d_semi = abs(semi - exact);
  Rational d_conv = abs(conv - exact);
  Rational best = d_semi < d_conv ? semi : conv;
  best.canonicalize();
  return best;
}

Rational q_eval(const SymMatQ& q, std::span<const Rational> z) {
  if (z.size() != q.dim()) throw InputError("q_eval: dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (sgn(z[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (sgn(z[j]) != 0) row += q(i, j) * z[j];
    total += z[i] * row;
  }
  return total;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string num(text.substr(0, slash));
    const std::string den(text.substr(slash + 1));
    auto valid_int = [](const std::string& s, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      return true;
    };
    if (!valid_int(num, true) || !valid_int(den, false)) return fail();
    mpz_class n(num[0] == '+' ? num.substr(1) : num);
    mpz_class d(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits += text[i];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits += text[i];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) exp_negative = text[i++] == '-';
    std::string exp_digits;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
      exp_digits += text[i];
    if (exp_digits.empty() || exp_digits.size() > 6) return fail();
    const long e = std::stol(exp_digits);
    scale += exp_negative ? -e : e;
  }
  if (i != text.size()) return fail();

  mpz_class mantissa(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational r = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational frac(long num, long den) {
  if (den == 0) throw InputError("frac: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace ssc
