#pragma once

#include <span>
#include <vector>

#include "specsparse/factorization.hpp"
#include "specsparse/graph.hpp"

namespace specsparse {

struct SolveResult {
  VertexVector x;
  int iterations = 0;
  /// ||L_G x - b|| / ||b||, recomputed from x at exit.
  double relative_residual = 0.0;
  bool converged = false;
  /// Recurrence residual after every iteration, relative to ||b||.
  std::vector<double> residual_history;
  /// Mean removed from b before solving a pure Laplacian system.
  double removed_mean = 0.0;
};

/// Preconditioned conjugate gradients on L_G x = b. For a pure Laplacian b is
/// projected orthogonal to the all-ones vector first (the residual refers to
/// the projected b). The true residual replaces the recurrence every 50
/// iterations and is checked before declaring convergence. Throws
/// SolverBreakdown on non-positive curvature.
SolveResult pcg_solve(const WeightedGraph& g, const LaplacianSolver& preconditioner,
                      std::span<const double> b, double rel_tol = 1e-3, int max_iters = 1000);

}  // namespace specsparse
