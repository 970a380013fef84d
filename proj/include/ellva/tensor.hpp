#pragma once

#include <Eigen/Dense>

#include "ellva/truncation.hpp"

namespace ellva {

// Dense complex matrices on the two-site (N^2) and three-site (N^3) spaces.
// First tensor factor owns the slow index: row (i1, i2) -> i1*N + i2.
namespace tensor {

using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

inline Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

// Permutation P(x (x) y) = y (x) x on C^N (x) C^N.
inline Matrix permutation(int N) {
  Matrix P = Matrix::Zero(N * N, N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) P(i * N + j, j * N + i) = 1.0;
  return P;
}

// Swap the two site labels: M21 = P M P.
inline Matrix swap_sites(const Matrix& M, int N) {
  const Matrix P = permutation(N);
  return P * M * P;
}

// Partial transpose on the second site.
inline Matrix transpose_site2(const Matrix& M, int N) {
  Matrix out(N * N, N * N);
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2)
      for (int j1 = 0; j1 < N; ++j1)
        for (int j2 = 0; j2 < N; ++j2)
          out(i1 * N + i2, j1 * N + j2) = M(i1 * N + j2, j1 * N + i2);
  return out;
}

// Embed a two-site operator into the three-site space on the given site pair.
inline Matrix embed12(const Matrix& M, int N) { return kron(M, identity(N)); }
inline Matrix embed23(const Matrix& M, int N) { return kron(identity(N), M); }
inline Matrix embed13(const Matrix& M, int N) {
  Matrix out = Matrix::Zero(N * N * N, N * N * N);
  for (int i1 = 0; i1 < N; ++i1)
    for (int i2 = 0; i2 < N; ++i2)
      for (int i3 = 0; i3 < N; ++i3)
        for (int j1 = 0; j1 < N; ++j1)
          for (int j3 = 0; j3 < N; ++j3)
            out((i1 * N + i2) * N + i3, (j1 * N + i2) * N + j3) = M(i1 * N + i3, j1 * N + j3);
  return out;
}

// Act with a single-site operator A on the first site of the two-site space.
inline Matrix on_site1(const Matrix& A, int N) { return kron(A, identity(N)); }

inline double max_abs(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

// Worst entrywise deviation of A from B, each entry scaled by
// max(|B_ij|, floor_frac * max|B|) so structural zeros compare absolutely.
inline double max_rel_diff(const Matrix& A, const Matrix& B, double floor_frac = 1e-2) {
  const double scale = max_abs(B);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double den = std::max(std::abs(B(i, j)), floor_frac * scale);
      worst = std::max(worst, std::abs(A(i, j) - B(i, j)) / den);
    }
  return worst;
}

}  // namespace tensor
}  // namespace ellva
