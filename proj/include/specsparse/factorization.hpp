#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "specsparse/graph.hpp"
#include "specsparse/spanning_tree.hpp"

namespace specsparse {

/// Applies the (pseudo)inverse of a fixed Laplacian. For a pure Laplacian the
/// right-hand side is projected orthogonal to the all-ones vector and so is
/// the solution; with self weights the matrix is nonsingular and solved as
/// is. Implementations are immutable and safe for concurrent solves.
class LaplacianSolver {
 public:
  virtual ~LaplacianSolver() = default;
  virtual Vertex size() const = 0;
  virtual bool singular() const = 0;
  virtual void solve(std::span<const double> b, std::span<double> x) const = 0;

  VertexVector solve(std::span<const double> b) const {
    VertexVector x(b.size());
    solve(b, x);
    return x;
  }
};

/// O(n) solver for a spanning-tree Laplacian.
class TreeSolver final : public LaplacianSolver {
 public:
  explicit TreeSolver(SpanningTree tree) : tree_(std::move(tree)) {}
  Vertex size() const override { return tree_.num_vertices(); }
  bool singular() const override { return true; }
  using LaplacianSolver::solve;
  void solve(std::span<const double> b, std::span<double> x) const override;
  const SpanningTree& tree() const { return tree_; }

 private:
  SpanningTree tree_;
};

/// Tree solve plus a dense k x k Woodbury correction for k chord edges:
/// (L_T + U W U^T)^+ b = y - L_T^+ U S^{-1} U^T y with y = L_T^+ b and
/// S = W^{-1} + U^T L_T^+ U. Each solve costs two tree solves.
class WoodburySolver final : public LaplacianSolver {
 public:
  WoodburySolver(SpanningTree tree, std::vector<Edge> chords);
  Vertex size() const override { return tree_.num_vertices(); }
  bool singular() const override { return true; }
  using LaplacianSolver::solve;
  void solve(std::span<const double> b, std::span<double> x) const override;

 private:
  SpanningTree tree_;
  std::vector<Edge> chords_;
  Eigen::LLT<Eigen::MatrixXd> capacitance_;
};

/// Elimination order for tree-like patterns: vertices of degree <= 2 are
/// eliminated greedily, chain by chain (no fill on a tree, one fill entry per
/// degree-2 step), and the remaining core is ordered by AMD. `outer`/`inner`
/// describe a full symmetric compressed-column pattern; the diagonal is
/// ignored. Returns the vertices in elimination order.
std::vector<int> low_degree_elimination_order(int n, const int* outer, const int* inner);

/// Eigen ordering functor wrapping low_degree_elimination_order.
template <typename StorageIndex>
class LowDegreeOrdering {
 public:
  using PermutationType = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, StorageIndex>;

  template <typename MatrixType>
  void operator()(const MatrixType& mat, PermutationType& perm) {
    const auto order = low_degree_elimination_order(static_cast<int>(mat.cols()), mat.outerIndexPtr(),
                                                    mat.innerIndexPtr());
    perm.resize(static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
      perm.indices()(static_cast<Eigen::Index>(k)) = static_cast<StorageIndex>(order[k]);
    }
  }
};

/// Sparse LDL^T of a graph Laplacian under LowDegreeOrdering.
/// Pure Laplacians are grounded with eps = 1e-6 * mean weighted degree added
/// to the diagonal of vertex 0, and solutions are re-projected orthogonal to
/// the all-ones vector.
class CholeskySolver final : public LaplacianSolver {
 public:
  /// Throws FactorizationError carrying the vertex of the first non-positive
  /// pivot.
  explicit CholeskySolver(const WeightedGraph& g);
  Vertex size() const override { return n_; }
  bool singular() const override { return singular_; }
  using LaplacianSolver::solve;
  void solve(std::span<const double> b, std::span<double> x) const override;

  /// Nonzeros of the unit lower factor, diagonal included.
  long long factor_nonzeros() const;
  double grounding() const { return grounding_; }

 private:
  Vertex n_ = 0;
  bool singular_ = true;
  double grounding_ = 0.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, LowDegreeOrdering<int>> ldlt_;
};

/// Edges above which the Woodbury path hands over to sparse Cholesky.
inline constexpr std::size_t kWoodburyMaxChords = 64;

/// Picks the solver for a tree plus recovered chords: plain tree solve for
/// k = 0, Woodbury for k <= 64 on pure Laplacians, sparse Cholesky otherwise.
/// `graph` must be the Laplacian the solver represents (tree plus chords,
/// with self weights).
std::shared_ptr<const LaplacianSolver> factor_preconditioner(const WeightedGraph& graph,
                                                             const SpanningTree& tree,
                                                             std::span<const Edge> chords);

}  // namespace specsparse
