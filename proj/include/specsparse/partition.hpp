#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specsparse/factorization.hpp"
#include "specsparse/graph.hpp"

namespace specsparse {

struct PartitionResult {
  /// +1 or -1 per vertex; zero entries go to +1.
  std::vector<int> signs;
  int positive = 0;
  int negative = 0;
  /// positive / negative (infinite if one side is empty).
  double balance_ratio = 0.0;
  /// Total weight of edges joining the two sides.
  double cut_weight = 0.0;
  /// The vector that was cut.
  VertexVector fiedler_estimate;
};

struct FiedlerOptions {
  int iters = 8;
  /// Inner conjugate gradient tolerance and iteration cap.
  double inner_tol = 1e-6;
  int inner_max_iters = 2000;
  std::uint64_t seed = 42;
};

struct FiedlerResult {
  /// Unit-length estimate.
  VertexVector vector;
  /// Rayleigh quotient x^T L_G x / x^T x after each outer iteration.
  std::vector<double> rayleigh_history;
  int inner_iterations = 0;
};

/// Inverse power iteration on L_G with preconditioned inner solves. For a
/// pure Laplacian the all-ones direction is deflated at every step.
FiedlerResult fiedler_approx(const WeightedGraph& g, const LaplacianSolver& preconditioner,
                             const FiedlerOptions& options = {});

PartitionResult sign_cut(const WeightedGraph& g, std::span<const double> v);

/// Fraction of vertices on different sides, minimized over a global flip.
double partition_disagreement(const PartitionResult& a, const PartitionResult& b);

}  // namespace specsparse
