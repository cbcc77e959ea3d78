#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specsparse/graph.hpp"

namespace specsparse {

/// Rooted spanning tree of a WeightedGraph. Tree edges keep the weights of
/// the source graph. Immutable after construction.
class SpanningTree {
 public:
  SpanningTree() = default;

  /// Roots the tree formed by `tree_edges` (edge ids of g) at `root`. Throws
  /// GraphError unless the edges form a spanning tree.
  static SpanningTree from_edges(const WeightedGraph& g, std::span<const EdgeId> tree_edges,
                                 Vertex root = 0);

  Vertex num_vertices() const { return static_cast<Vertex>(parent_.size()); }
  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  double parent_weight(Vertex v) const { return parent_weight_[v]; }
  /// Graph edge id joining v to its parent, -1 at the root.
  EdgeId parent_edge(Vertex v) const { return parent_edge_[v]; }
  int depth(Vertex v) const { return depth_[v]; }
  /// Sum of 1/w along the path from the root.
  double path_resistance(Vertex v) const { return path_resistance_[v]; }

  /// Every vertex appears after all of its descendants; the root is last.
  std::span<const Vertex> elimination_order() const { return elimination_order_; }

  /// Graph edge ids of the tree, ascending.
  std::span<const EdgeId> edges() const { return edges_; }
  bool contains_edge(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < in_tree_.size() && in_tree_[e];
  }

  Vertex lca(Vertex a, Vertex b) const;

 private:
  Vertex ancestor(Vertex v, int steps) const;

  Vertex root_ = 0;
  std::vector<Vertex> parent_;
  std::vector<double> parent_weight_;
  std::vector<EdgeId> parent_edge_;
  std::vector<int> depth_;
  std::vector<double> path_resistance_;
  std::vector<Vertex> elimination_order_;
  std::vector<EdgeId> edges_;
  std::vector<char> in_tree_;
  // up_[k * n + v] is the 2^k-th ancestor of v (the root maps to itself).
  std::vector<Vertex> up_;
  int levels_ = 0;
};

enum class TreeStrategy { kMaxWeight, kLowStretch };

struct TreeOptions {
  TreeStrategy strategy = TreeStrategy::kLowStretch;
  std::uint64_t seed = 42;
  /// Clustering passes tried by the low-stretch heuristic.
  int trials = 3;
};

SpanningTree extract_spanning_tree(const WeightedGraph& g, const TreeOptions& options = {});

/// Kruskal on descending weight; equal weights keep the lower edge index.
SpanningTree max_weight_spanning_tree(const WeightedGraph& g);

/// Repeated exponential-shift ball growing on the resistance metric with
/// contraction between levels; returns the candidate (including the
/// max-weight tree) with the lowest total stretch.
SpanningTree low_stretch_spanning_tree(const WeightedGraph& g, std::uint64_t seed, int trials = 3);

/// Comb tree of a generate_grid mesh: the bottom row is the spine and every
/// column is a tooth hanging from it.
SpanningTree hair_comb_tree(const WeightedGraph& grid, int rows, int cols);

/// w times the tree resistance between p and q.
double edge_stretch(const SpanningTree& t, Vertex p, Vertex q, double w);

/// Sum of edge_stretch over every edge of g (tree edges contribute 1).
double total_stretch(const WeightedGraph& g, const SpanningTree& t);

struct TreePath {
  /// Edge ids from p up to the common ancestor, then down to q.
  std::vector<EdgeId> edges;
  /// Largest-resistance edge on the path; ties keep the lower edge id.
  EdgeId bottleneck = -1;
};

TreePath tree_path_edges(const SpanningTree& t, Vertex p, Vertex q);
EdgeId bottleneck_edge(const SpanningTree& t, Vertex p, Vertex q);

/// Solves L_T x = b in O(n) by leaf-first elimination and back substitution.
/// b is projected orthogonal to the all-ones vector and so is the result.
VertexVector tree_solve(const SpanningTree& t, std::span<const double> b);
void tree_solve(const SpanningTree& t, std::span<const double> b, std::span<double> x);

}  // namespace specsparse
