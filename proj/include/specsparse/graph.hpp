#pragma once

#include <optional>
#include <span>
#include <vector>

#include "specsparse/types.hpp"

namespace specsparse {

/// Undirected, connected, positively weighted graph. The Laplacian is never
/// stored; it is applied edge by edge. `self_weights` holds the diagonal
/// surplus of an SDD input and is not part of the edge set.
class WeightedGraph {
 public:
  struct Incidence {
    Vertex to;
    EdgeId edge;
  };

  WeightedGraph() = default;

  /// Validates and builds. Parallel edges are merged by summing weights, the
  /// first occurrence fixes the edge index. Throws GraphError on a self loop,
  /// a non-positive weight, an out-of-range vertex or a disconnected graph.
  static WeightedGraph from_edges(Vertex n, std::span<const Edge> edges,
                                  std::vector<double> self_weights = {});

  Vertex num_vertices() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  /// Edges are stored with p < q.
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Neighbors of v sorted by vertex index.
  std::span<const Incidence> neighbors(Vertex v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {adjacency_.data() + b, static_cast<std::size_t>(e - b)};
  }

  const std::vector<double>& self_weights() const { return self_weights_; }
  double self_weight(Vertex v) const { return self_weights_[static_cast<std::size_t>(v)]; }
  bool has_self_weights() const { return has_self_weights_; }

  /// Sum of incident edge weights (self weight excluded).
  double weighted_degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  /// Laplacian diagonal entry, self weight included.
  double diagonal(Vertex v) const { return weighted_degree(v) + self_weight(v); }
  double mean_weighted_degree() const;

  std::optional<EdgeId> find_edge(Vertex p, Vertex q) const;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeId> offsets_;
  std::vector<Incidence> adjacency_;
  std::vector<double> self_weights_;
  std::vector<double> degree_;
  bool has_self_weights_ = false;
};

/// Subgraph of `g` restricted to `edge_ids` (in that order), keeping every
/// vertex and the self weights of `g`.
WeightedGraph edge_subgraph(const WeightedGraph& g, std::span<const EdgeId> edge_ids);

/// y = L_G x, including self weights on the diagonal.
VertexVector laplacian_apply(const WeightedGraph& g, std::span<const double> x);
void laplacian_apply(const WeightedGraph& g, std::span<const double> x, std::span<double> y);

/// Sum of w (x(p) - x(q))^2 over edges plus sum of self_weight(p) x(p)^2.
double quadratic_form(const WeightedGraph& g, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Removes the all-ones component in place and returns the removed mean.
double project_out_constant(std::span<double> x);

}  // namespace specsparse
