#pragma once

#include <vector>

#include <Eigen/Dense>

#include "specsparse/graph.hpp"

namespace specsparse {

/// Largest graph the dense routines accept.
inline constexpr Vertex kDenseMaxVertices = 2000;

struct JacobiResult {
  /// Unsorted, in the order of the diagonal at termination.
  Eigen::VectorXd eigenvalues;
  /// Columns are orthonormal eigenvectors (empty unless requested).
  Eigen::MatrixXd eigenvectors;
  int sweeps = 0;
  /// Off-diagonal Frobenius norm at termination, and ||A||_F.
  double off_norm = 0.0;
  double norm = 0.0;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix until the
/// off-diagonal mass falls below 1e-13 ||A||_F. Only the upper triangle is
/// read.
JacobiResult jacobi_eigen(Eigen::MatrixXd a, bool want_vectors = true);

/// Dense Laplacian including self weights.
Eigen::MatrixXd dense_laplacian(const WeightedGraph& g);

/// Generalized eigenpairs of L_G u = lambda L_P u on the range space.
struct DenseSpectrum {
  /// Descending. n - 1 values for a pure Laplacian pencil, n otherwise.
  std::vector<double> eigenvalues;
  /// eigenvectors[i] pairs with eigenvalues[i]; u_i^T L_P u_j = delta_ij and,
  /// for pure Laplacians, each u_i is orthogonal to the all-ones vector.
  std::vector<VertexVector> eigenvectors;
  int sweeps = 0;
};

/// Grounds a pure Laplacian pencil by deleting the row and column of vertex
/// 0, factors L_P = C C^T, and diagonalizes C^{-1} L_G C^{-T} with Jacobi.
/// Throws on n > kDenseMaxVertices or an indefinite L_P.
DenseSpectrum dense_generalized_eigs(const WeightedGraph& g, const WeightedGraph& p,
                                     bool want_vectors = true);

/// Tr(L_P^+ L_G) on the range space.
double dense_trace_ratio(const WeightedGraph& g, const WeightedGraph& p);

}  // namespace specsparse
