#include "ssc/compound.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace ssc {

std::vector<std::pair<int, int>> lex_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

std::size_t pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n || i == j) throw InputError("pair_index: need 0 <= i < j < n");
  // Pairs starting with 0..i-1 come first: Σ_{r<i} (n-1-r) of them.
  return static_cast<std::size_t>(i * (2 * n - i - 1) / 2 + (j - i - 1));
}

WedgeBasis wedge_basis(int n) {
  if (n < 2) throw InputError("wedge_basis: n must be at least 2");
  WedgeBasis b;
  b.n = n;
  b.pairs = lex_pairs(n);
  b.columns = Matrix(static_cast<std::size_t>(n) * n, b.pairs.size());
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t c = 0; c < b.pairs.size(); ++c) {
    const auto [i, j] = b.pairs[c];
    b.columns(static_cast<std::size_t>(i) * n + j, c) = h;
    b.columns(static_cast<std::size_t>(j) * n + i, c) = -h;
  }
  return b;
}

std::vector<double> wedge(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InputError("wedge: vector sizes differ");
  auto uv = kron(u, v);
  const auto vu = kron(v, u);
  for (std::size_t i = 0; i < uv.size(); ++i) uv[i] -= vu[i];
  return uv;
}

std::vector<double> wedge_coordinates(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InputError("wedge_coordinates: vector sizes differ");
  const int n = static_cast<int>(u.size());
  std::vector<double> out;
  for (auto [i, j] : lex_pairs(n)) out.push_back((u[i] * v[j] - u[j] * v[i]) * std::sqrt(2.0));
  return out;
}

Matrix psi_via_kron(const Matrix& m) {
  if (!m.square() || m.rows() < 2) throw InputError("psi_via_kron: need a square matrix of order >= 2");
  const std::size_t n = m.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix big = kron(m, id) + kron(id, m);
  const Matrix p = wedge_basis(static_cast<int>(n)).columns;
  return p.transpose() * big * p;
}

std::vector<std::vector<int>> lex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int r = pos + 1; r < k; ++r) cur[r] = cur[r - 1] + 1;
  }
  return out;
}

std::vector<int> compound_sign_similarity(int n) {
  if (n < 2) throw InputError("compound_sign_similarity: n must be at least 2");
  MatrixQ ones(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Rational(1));
  const MatrixQ c = additive_compound(ones, 2);
  const MatrixQ p = psi(ones);
  const std::size_t m = c.rows();

  std::vector<int> sign(m, 0);
  for (std::size_t root = 0; root < m; ++root) {
    if (sign[root] != 0) continue;
    sign[root] = 1;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t a = frontier.front();
      frontier.pop();
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b || sgn(c(a, b)) == 0) continue;
        // s_a s_b c_ab = p_ab, with |c_ab| = |p_ab|.
        if (abs(c(a, b)) != abs(p(a, b))) throw std::logic_error("compound and psi supports differ");
        const int want = (c(a, b) == p(a, b) ? 1 : -1) * sign[a];
        if (sign[b] == 0) {
          sign[b] = want;
          frontier.push(b);
        } else if (sign[b] != want) {
          throw std::logic_error("no consistent sign similarity between compound and psi");
        }
      }
    }
  }
  return sign;
}

}  // namespace ssc
