#pragma once

#include <cstdint>
#include <span>

#include "specsparse/factorization.hpp"
#include "specsparse/graph.hpp"

namespace specsparse {

/// Extreme generalized eigenvalue estimates of the pencil (L_G, L_P).
struct SimilarityEstimate {
  double lambda_max = 1.0;
  double lambda_min = 1.0;
  /// lambda_max / lambda_min.
  double sigma2 = 1.0;
  int iterations = 0;
  /// Final power iterate, reusable as the next start vector.
  VertexVector vector;
};

struct LambdaMaxEstimate {
  double value = 1.0;
  int iterations = 0;
  /// Final unit-length iterate.
  VertexVector vector;
};

/// Generalized power iteration with Rayleigh quotient readout
/// (h^T L_G h) / (h^T L_P h). Stops once successive readouts differ by less
/// than rel_tol relative, or after max_iters. The readout is a lower bound
/// on the true lambda_max. A non-empty `start` replaces the seeded
/// Rademacher start vector.
LambdaMaxEstimate estimate_lambda_max(const WeightedGraph& g, const WeightedGraph& p,
                                      const LaplacianSolver& solver, int max_iters = 10,
                                      double rel_tol = 1e-3, std::uint64_t seed = 42,
                                      std::span<const double> start = {});

/// min_v L_G(v,v) / L_P(v,v): the Rayleigh ratio of the best single-vertex
/// indicator, an upper bound on lambda_min.
double estimate_lambda_min(const WeightedGraph& g, const WeightedGraph& p);

SimilarityEstimate estimate_similarity(const WeightedGraph& g, const WeightedGraph& p,
                                       const LaplacianSolver& solver, int max_iters = 10,
                                       double rel_tol = 1e-3, std::uint64_t seed = 42,
                                       std::span<const double> start = {});

/// (target_sigma2 * lambda_min / lambda_max)^(2t + 1), clamped to (0, 1].
double heat_threshold(double target_sigma2, double lambda_min, double lambda_max, int t);

/// ceil(2 lambda_max / target_lambda_max - 1), at least 0. Advisory only.
long long unique_edge_budget(double lambda_max, double target_lambda_max);

}  // namespace specsparse
