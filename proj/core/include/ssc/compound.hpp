#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ssc/error.hpp"
#include "ssc/exactq.hpp"
#include "ssc/numerics.hpp"

namespace ssc {

/// Pairs (i, j), i < j, in lexicographic order. This ordering indexes the
/// wedge basis, ψ(M), and the blocks of every certificate.
std::vector<std::pair<int, int>> lex_pairs(int n);

/// Index of (i, j) (i < j) in lex_pairs(n).
std::size_t pair_index(int n, int i, int j);

/// Orthonormal basis (e_i ⊗ e_j − e_j ⊗ e_i)/√2 of Λ²(ℝⁿ) stacked as the
/// columns of an n² × C(n,2) matrix.
struct WedgeBasis {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  Matrix columns;
};

WedgeBasis wedge_basis(int n);

/// u ∧ v = u ⊗ v − v ⊗ u.
std::vector<double> wedge(std::span<const double> u, std::span<const double> v);

/// Coordinates of u ∧ v in the wedge basis: (u_i v_j − u_j v_i)·√2 for each
/// pair, so that columns · coords = u ∧ v.
std::vector<double> wedge_coordinates(std::span<const double> u, std::span<const double> v);

/// ψ(M) = Pᵀ(M ⊗ I + I ⊗ M)P, evaluated by its entry formula
///   ψ[(i,j),(k,l)] = m_ik δ_jl − m_jk δ_il + δ_ik m_jl − δ_jk m_il,
/// which involves no √2, so the result lies in the scalar field of M.
template <typename T>
DenseMatrix<T> psi(const DenseMatrix<T>& m) {
  if (!m.square() || m.rows() < 2) throw InputError("psi: need a square matrix of order >= 2");
  const int n = static_cast<int>(m.rows());
  const auto pairs = lex_pairs(n);
  DenseMatrix<T> out(pairs.size(), pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const auto [i, j] = pairs[a];
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const auto [k, l] = pairs[b];
      T v(0);
      if (j == l) v += m(i, k);
      if (i == l) v -= m(j, k);
      if (i == k) v += m(j, l);
      if (j == k) v -= m(i, l);
      out(a, b) = v;
    }
  }
  return out;
}

template <typename T>
SymmetricMatrix<T> psi(const SymmetricMatrix<T>& m) {
  return SymmetricMatrix<T>::from_dense(psi(m.dense()));
}

/// ψ computed literally as Pᵀ(M⊗I + I⊗M)P in floating point; reference path
/// for the entry formula.
Matrix psi_via_kron(const Matrix& m);

/// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> lex_subsets(int n, int k);

/// k-th additive compound M^[k] indexed by lexicographic k-subsets:
///   α = β:                 Σ_{i∈α} m_ii
///   α∖β = {i}, β∖α = {j}:  (−1)^{#{r ∈ α∩β : min(i,j) < r < max(i,j)}} m_ij
///   otherwise:             0
template <typename T>
DenseMatrix<T> additive_compound(const DenseMatrix<T>& m, int k) {
  if (!m.square()) throw InputError("additive_compound: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (k < 1 || k > n) throw InputError("additive_compound: k must satisfy 1 <= k <= n");
  const auto subsets = lex_subsets(n, k);
  DenseMatrix<T> out(subsets.size(), subsets.size());
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    const auto& alpha = subsets[a];
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      const auto& beta = subsets[b];
      if (a == b) {
        T s(0);
        for (int i : alpha) s += m(i, i);
        out(a, b) = s;
        continue;
      }
      // Sorted-merge to find α∖β, β∖α and the shared elements.
      std::vector<int> only_alpha, only_beta, common;
      std::size_t x = 0, y = 0;
      while (x < alpha.size() || y < beta.size()) {
        if (y == beta.size() || (x < alpha.size() && alpha[x] < beta[y])) {
          only_alpha.push_back(alpha[x++]);
        } else if (x == alpha.size() || beta[y] < alpha[x]) {
          only_beta.push_back(beta[y++]);
        } else {
          common.push_back(alpha[x]);
          ++x;
          ++y;
        }
      }
      if (only_alpha.size() != 1) continue;
      const int i = only_alpha[0];
      const int j = only_beta[0];
      const int lo = std::min(i, j);
      const int hi = std::max(i, j);
      int between = 0;
      for (int r : common)
        if (lo < r && r < hi) ++between;
      out(a, b) = (between % 2 == 0) ? T(m(i, j)) : T(-m(i, j));
    }
  }
  return out;
}

/// Diagonal ±1 signs s with diag(s)·M^[2]·diag(s) = ψ(M), found by walking the
/// coupling pattern of the all-ones matrix from the first pair. Throws
/// std::logic_error if no consistent sign assignment exists.
std::vector<int> compound_sign_similarity(int n);

}  // namespace ssc
