#include "specsparse/spanning_tree.hpp"

#include "specsparse/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace specsparse {

SpanningTree SpanningTree::from_edges(const WeightedGraph& g, std::span<const EdgeId> tree_edges,
                                      Vertex root) {
  const Vertex n = g.num_vertices();
  if (root < 0 || root >= n) throw GraphError("tree root out of range");
  if (static_cast<Vertex>(tree_edges.size()) != n - 1) {
    throw GraphError("a spanning tree of " + std::to_string(n) + " vertices needs " +
                     std::to_string(n - 1) + " edges, got " + std::to_string(tree_edges.size()));
  }

  const auto nn = static_cast<std::size_t>(n);
  SpanningTree t;
  t.root_ = root;
  t.in_tree_.assign(static_cast<std::size_t>(g.num_edges()), 0);
  t.edges_.assign(tree_edges.begin(), tree_edges.end());
  std::sort(t.edges_.begin(), t.edges_.end());

  std::vector<Vertex> offsets(nn + 1, 0);
  for (const EdgeId e : t.edges_) {
    if (e < 0 || e >= g.num_edges()) throw GraphError("tree edge id out of range");
    if (t.in_tree_[e]) throw GraphError("tree edge listed twice");
    t.in_tree_[e] = 1;
    ++offsets[g.edge(e).p + 1];
    ++offsets[g.edge(e).q + 1];
  }
  for (std::size_t v = 0; v < nn; ++v) offsets[v + 1] += offsets[v];
  std::vector<EdgeId> incident(static_cast<std::size_t>(offsets[nn]));
  {
    std::vector<Vertex> fill(offsets.begin(), offsets.end() - 1);
    for (const EdgeId e : t.edges_) {
      incident[fill[g.edge(e).p]++] = e;
      incident[fill[g.edge(e).q]++] = e;
    }
  }

  t.parent_.assign(nn, -1);
  t.parent_weight_.assign(nn, 0.0);
  t.parent_edge_.assign(nn, -1);
  t.depth_.assign(nn, 0);
  t.path_resistance_.assign(nn, 0.0);

  std::vector<Vertex> bfs;
  bfs.reserve(nn);
  bfs.push_back(root);
  t.parent_[root] = root;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    const Vertex v = bfs[head];
    for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
      const EdgeId e = incident[k];
      const Edge& edge = g.edge(e);
      const Vertex u = edge.p == v ? edge.q : edge.p;
      if (t.parent_[u] != -1) continue;
      t.parent_[u] = v;
      t.parent_weight_[u] = edge.w;
      t.parent_edge_[u] = e;
      t.depth_[u] = t.depth_[v] + 1;
      t.path_resistance_[u] = t.path_resistance_[v] + 1.0 / edge.w;
      bfs.push_back(u);
    }
  }
  if (bfs.size() != nn) throw GraphError("tree edges do not span the graph");
  t.elimination_order_.assign(bfs.rbegin(), bfs.rend());

  int max_depth = 0;
  for (const int d : t.depth_) max_depth = std::max(max_depth, d);
  t.levels_ = 1;
  while ((1 << t.levels_) <= max_depth) ++t.levels_;
  t.up_.resize(static_cast<std::size_t>(t.levels_) * nn);
  std::copy(t.parent_.begin(), t.parent_.end(), t.up_.begin());
  for (int k = 1; k < t.levels_; ++k) {
    const Vertex* prev = t.up_.data() + (k - 1) * nn;
    Vertex* cur = t.up_.data() + k * nn;
    for (std::size_t v = 0; v < nn; ++v) cur[v] = prev[prev[v]];
  }
  return t;
}

Vertex SpanningTree::ancestor(Vertex v, int steps) const {
  const auto nn = parent_.size();
  for (int k = 0; steps > 0; ++k, steps >>= 1) {
    if (steps & 1) v = up_[k * nn + v];
  }
  return v;
}

Vertex SpanningTree::lca(Vertex a, Vertex b) const {
  const Vertex n = num_vertices();
  if (a < 0 || b < 0 || a >= n || b >= n) throw GraphError("vertex out of range");
  if (depth_[a] < depth_[b]) std::swap(a, b);
  a = ancestor(a, depth_[a] - depth_[b]);
  if (a == b) return a;
  const auto nn = parent_.size();
  for (int k = levels_ - 1; k >= 0; --k) {
    const Vertex ua = up_[k * nn + a];
    const Vertex ub = up_[k * nn + b];
    if (ua != ub) {
      a = ua;
      b = ub;
    }
  }
  return parent_[a];
}

SpanningTree extract_spanning_tree(const WeightedGraph& g, const TreeOptions& options) {
  switch (options.strategy) {
    case TreeStrategy::kMaxWeight:
      return max_weight_spanning_tree(g);
    case TreeStrategy::kLowStretch:
      return low_stretch_spanning_tree(g, options.seed, options.trials);
  }
  return max_weight_spanning_tree(g);
}

SpanningTree max_weight_spanning_tree(const WeightedGraph& g) {
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w > g.edge(b).w; });

  std::vector<Vertex> uf(static_cast<std::size_t>(g.num_vertices()));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](Vertex v) {
    while (uf[v] != v) {
      uf[v] = uf[uf[v]];
      v = uf[v];
    }
    return v;
  };

  std::vector<EdgeId> chosen;
  chosen.reserve(uf.size());
  for (const EdgeId e : order) {
    const Vertex a = find(g.edge(e).p);
    const Vertex b = find(g.edge(e).q);
    if (a == b) continue;
    uf[b] = a;
    chosen.push_back(e);
    if (static_cast<Vertex>(chosen.size()) + 1 == g.num_vertices()) break;
  }
  return SpanningTree::from_edges(g, chosen);
}

SpanningTree hair_comb_tree(const WeightedGraph& grid, int rows, int cols) {
  if (rows < 2 || cols < 2 || rows * cols != grid.num_vertices()) {
    throw GraphError("hair comb needs the rows x cols mesh it was generated with");
  }
  std::vector<EdgeId> chosen;
  auto require = [&](Vertex a, Vertex b) {
    const auto e = grid.find_edge(a, b);
    if (!e) throw GraphError("graph is not a rows x cols mesh");
    chosen.push_back(*e);
  };
  for (int c = 0; c + 1 < cols; ++c) {
    require(grid_vertex(rows - 1, c, cols), grid_vertex(rows - 1, c + 1, cols));
  }
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r + 1 < rows; ++r) {
      require(grid_vertex(r, c, cols), grid_vertex(r + 1, c, cols));
    }
  }
  return SpanningTree::from_edges(grid, chosen);
}

double edge_stretch(const SpanningTree& t, Vertex p, Vertex q, double w) {
  const Vertex a = t.lca(p, q);
  return w * (t.path_resistance(p) + t.path_resistance(q) - 2.0 * t.path_resistance(a));
}

double total_stretch(const WeightedGraph& g, const SpanningTree& t) {
  double sum = 0.0;
  double carry = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const double s = t.contains_edge(e) ? 1.0 : edge_stretch(t, edge.p, edge.q, edge.w);
    const double y = s - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
  }
  return sum;
}

namespace {

// Lower resistance loses; on equal resistance the lower edge id wins.
bool more_resistive(const SpanningTree& t, Vertex v, EdgeId best, double best_w) {
  const double w = t.parent_weight(v);
  return w < best_w || (w == best_w && t.parent_edge(v) < best);
}

}  // namespace

TreePath tree_path_edges(const SpanningTree& t, Vertex p, Vertex q) {
  const Vertex a = t.lca(p, q);
  TreePath path;
  double best_w = 0.0;
  auto visit = [&](Vertex v) {
    path.edges.push_back(t.parent_edge(v));
    if (path.bottleneck < 0 || more_resistive(t, v, path.bottleneck, best_w)) {
      path.bottleneck = t.parent_edge(v);
      best_w = t.parent_weight(v);
    }
  };
  for (Vertex v = p; v != a; v = t.parent(v)) visit(v);
  const auto up_count = path.edges.size();
  for (Vertex v = q; v != a; v = t.parent(v)) visit(v);
  std::reverse(path.edges.begin() + static_cast<std::ptrdiff_t>(up_count), path.edges.end());
  return path;
}

EdgeId bottleneck_edge(const SpanningTree& t, Vertex p, Vertex q) {
  const Vertex a = t.lca(p, q);
  EdgeId best = -1;
  double best_w = 0.0;
  for (Vertex start : {p, q}) {
    for (Vertex v = start; v != a; v = t.parent(v)) {
      if (best < 0 || more_resistive(t, v, best, best_w)) {
        best = t.parent_edge(v);
        best_w = t.parent_weight(v);
      }
    }
  }
  return best;
}

void tree_solve(const SpanningTree& t, std::span<const double> b, std::span<double> x) {
  const auto n = static_cast<std::size_t>(t.num_vertices());
  if (b.size() != n || x.size() != n) throw DimensionError("tree_solve length mismatch");
  std::copy(b.begin(), b.end(), x.begin());
  project_out_constant(x);
  const auto order = t.elimination_order();
  // Leaf-first: x[v] becomes the net current leaving the subtree of v.
  for (const Vertex v : order) {
    if (v != t.root()) x[t.parent(v)] += x[v];
  }
  // Root-first: potential drops by current / conductance along each edge.
  x[t.root()] = 0.0;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    const Vertex v = *it;
    x[v] = x[t.parent(v)] + x[v] / t.parent_weight(v);
  }
  project_out_constant(x);
}

VertexVector tree_solve(const SpanningTree& t, std::span<const double> b) {
  VertexVector x(b.size());
  tree_solve(t, b, x);
  return x;
}

}  // namespace specsparse
