#pragma once

#include <span>
#include <vector>

#include "ssc/matrix.hpp"

namespace ssc {

using Matrix = DenseMatrix<double>;
using SymMatF = SymmetricMatrix<double>;

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues are sorted in
/// descending order and column i of `eigenvectors` pairs with eigenvalues[i].
struct EigenDecomp {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

struct EighOptions {
  /// Sweeps stop once the off-diagonal Frobenius norm drops below
  /// `off_diagonal_tol * max(1, ||M||_F)`.
  double off_diagonal_tol = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver. Deterministic: ties in the eigenvalue order keep
/// the original diagonal position, and every eigenvector is signed so that its
/// largest-magnitude entry (first one on ties) is positive.
/// Throws InputError on non-finite entries.
EigenDecomp eigh(const SymMatF& m, const EighOptions& options = {});

/// Eigenvalues only, descending.
std::vector<double> eigvalsh(const SymMatF& m, const EighOptions& options = {});

/// Kronecker product: (A⊗B)[i*p+k][j*q+l] = A[i][j]*B[k][l] for B of shape p×q.
Matrix kron(const Matrix& a, const Matrix& b);
std::vector<double> kron(std::span<const double> a, std::span<const double> b);

/// Euclidean projection onto the probability simplex {u : u >= 0, sum u = 1}.
std::vector<double> project_simplex(std::span<const double> v);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const Matrix& m);

Matrix to_matrix(const SymMatF& m);

/// Symmetrizes (M + Mᵀ)/2 into a SymMatF.
SymMatF symmetrize(const Matrix& m);

}  // namespace ssc
