#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "specsparse/factorization.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/spanning_tree.hpp"

namespace specsparse {

struct HeatReport;

/// One densification round as seen by the loop.
struct RoundRecord {
  /// 1-based; edges added here carry the same tag.
  int round = 0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double sigma2 = 0.0;
  int lambda_iterations = 0;
  /// Filtering data; zero on the final (stopping) round.
  double threshold = 0.0;
  int candidates = 0;
  int accepted = 0;
  int edges_added = 0;
  /// Sum of off-tree Joule heats and the same quantity through the quadratic
  /// forms of G and P; they agree up to rounding.
  double heat_total = 0.0;
  double quadratic_gap = 0.0;
};

enum class StopReason {
  kNotRun,
  kTargetReached,
  kMaxRounds,
  kBudgetExhausted,
  /// Every edge of G is already in P, or no edge passed the filter.
  kNoCandidates,
};

const char* to_string(StopReason reason);

/// Spanning tree plus recovered off-tree edges of a graph G, with the
/// factorized Laplacian L_P. Recovered edges keep their original weights and
/// the self weights of G carry over unchanged.
class Sparsifier {
 public:
  Sparsifier(const WeightedGraph& g, SpanningTree tree, std::vector<EdgeId> recovered = {});

  const SpanningTree& tree() const { return tree_; }
  /// Recovered edge ids of G in the order they were added.
  std::span<const EdgeId> recovered_edges() const { return recovered_; }
  /// 1-based densification round that added each recovered edge (parallel to
  /// recovered_edges()).
  std::span<const int> recovered_rounds() const { return recovered_round_; }
  /// Edges of G not in P, ascending.
  std::span<const EdgeId> offtree_edges() const { return offtree_; }
  bool contains_edge(EdgeId e) const { return in_p_[static_cast<std::size_t>(e)] != 0; }

  /// L_P as a graph: tree edges first, then recovered edges.
  const WeightedGraph& graph() const { return graph_; }
  const LaplacianSolver& solver() const { return *solver_; }
  std::shared_ptr<const LaplacianSolver> shared_solver() const { return solver_; }

  Vertex num_vertices() const { return graph_.num_vertices(); }
  EdgeId num_edges() const { return graph_.num_edges(); }
  /// |E_s| / |V|.
  double density() const;

  /// New sparsifier with `more` appended to the recovered edges, tagged with
  /// `round`.
  Sparsifier with_edges(const WeightedGraph& g, std::span<const EdgeId> more, int round = 0) const;

  std::vector<RoundRecord> history;
  /// True once the estimated sigma^2 reached the target.
  bool converged = false;
  StopReason stop_reason = StopReason::kNotRun;

 private:
  SpanningTree tree_;
  std::vector<EdgeId> recovered_;
  std::vector<int> recovered_round_;
  std::vector<EdgeId> offtree_;
  std::vector<char> in_p_;
  WeightedGraph graph_;
  std::shared_ptr<const LaplacianSolver> solver_;
};

/// Edges with normalized heat at least `threshold` (and nonzero heat), in
/// rank order.
std::vector<EdgeId> filter_edges(const HeatReport& report, double threshold);

/// Greedy pass in rank order: an edge whose tree-path bottleneck was already
/// claimed by an accepted edge is rejected as similar; accepted edges claim
/// their bottleneck. The scan stops after `limit` acceptances.
std::vector<EdgeId> deduplicate_similar(
    const WeightedGraph& g, std::span<const EdgeId> candidates, const SpanningTree& tree,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

struct DensifyConfig {
  int t = 2;
  /// Random vectors per heat pass; 0 picks max(4, ceil(log2 n)).
  int r = 0;
  std::uint64_t seed = 42;
  int max_rounds = 20;
  double max_edges_per_round_fraction = 0.02;
  /// Cap on the total number of recovered edges; negative means none.
  long long edge_budget = -1;
  int lambda_max_iters = 10;
  double lambda_rel_tol = 1e-3;
  int threads = 1;
};

/// Iterative densification: factor L_P, estimate lambda_max and lambda_min,
/// stop once sigma^2 <= target, otherwise rank off-tree edges by Joule heat,
/// filter by the similarity threshold, drop similar edges and add the rest
/// (capped per round). Reaching max_rounds leaves `converged` false.
Sparsifier densify(const WeightedGraph& g, SpanningTree tree, double target_sigma2,
                   const DensifyConfig& config = {});

/// Per-edge listing `kind p q w round`, kind being `tree` or `recovered`
/// (tree edges carry round 0).
void write_sparsifier_edges(std::ostream& out, const WeightedGraph& g, const Sparsifier& s);

/// gamma = u(p) - u(q) for u normalized so that u^T L_P u = 1.
double rank_one_gamma(std::span<const double> u, const Edge& edge);

/// Eigenvalue after adding an edge of weight w that fixes lambda alone:
/// lambda / (1 + w gamma^2).
double predicted_eigenvalue_after_add(double lambda, double w, double gamma);

/// Weight that moves lambda to lambda_target: (lambda - target) / (target gamma^2).
double weight_for_target(double lambda, double lambda_target, double gamma);

}  // namespace specsparse
