#include "specsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace specsparse {

namespace {

bool is_connected(Vertex n, const std::vector<EdgeId>& offsets,
                  const std::vector<WeightedGraph::Incidence>& adjacency) {
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  Vertex reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
      const Vertex u = adjacency[static_cast<std::size_t>(k)].to;
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(Vertex n, std::span<const Edge> edges,
                                        std::vector<double> self_weights) {
  if (n < 1) throw GraphError("graph needs at least one vertex");
  if (self_weights.empty()) self_weights.assign(static_cast<std::size_t>(n), 0.0);
  if (self_weights.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("self_weights length " + std::to_string(self_weights.size()) +
                         " does not match vertex count " + std::to_string(n));
  }
  for (Vertex v = 0; v < n; ++v) {
    const double s = self_weights[v];
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw GraphError("self weight of vertex " + std::to_string(v) + " must be finite and >= 0");
    }
  }

  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.p < 0 || e.q < 0 || e.p >= n || e.q >= n) {
      throw GraphError("edge (" + std::to_string(e.p) + "," + std::to_string(e.q) +
                       ") has a vertex out of range");
    }
    if (e.p == e.q) throw GraphError("self loop at vertex " + std::to_string(e.p));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw GraphError("edge (" + std::to_string(e.p) + "," + std::to_string(e.q) +
                       ") has a non-positive weight");
    }
    normalized.push_back({std::min(e.p, e.q), std::max(e.p, e.q), e.w});
  }

  // Merge parallel edges; the earliest occurrence keeps its position.
  std::vector<std::size_t> order(normalized.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Edge& x = normalized[a];
    const Edge& y = normalized[b];
    return x.p != y.p ? x.p < y.p : x.q < y.q;
  });
  std::vector<char> keep(normalized.size(), 1);
  for (std::size_t k = 1; k < order.size(); ++k) {
    Edge& first = normalized[order[k - 1]];
    const Edge& cur = normalized[order[k]];
    if (first.p == cur.p && first.q == cur.q) {
      keep[order[k]] = 0;
      first.w += cur.w;
      order[k] = order[k - 1];
    }
  }

  WeightedGraph g;
  g.n_ = n;
  for (std::size_t k = 0; k < normalized.size(); ++k) {
    if (keep[k]) g.edges_.push_back(normalized[k]);
  }

  const auto nn = static_cast<std::size_t>(n);
  g.offsets_.assign(nn + 1, 0);
  g.degree_.assign(nn, 0.0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[static_cast<std::size_t>(e.p) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.q) + 1];
    g.degree_[e.p] += e.w;
    g.degree_[e.q] += e.w;
  }
  for (std::size_t v = 0; v < nn; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(static_cast<std::size_t>(g.offsets_[nn]));
  std::vector<EdgeId> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges_[id];
    g.adjacency_[fill[e.p]++] = {e.q, id};
    g.adjacency_[fill[e.q]++] = {e.p, id};
  }
  for (std::size_t v = 0; v < nn; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
  }

  if (!is_connected(n, g.offsets_, g.adjacency_)) {
    throw GraphError("graph is disconnected");
  }

  g.self_weights_ = std::move(self_weights);
  g.has_self_weights_ = std::any_of(g.self_weights_.begin(), g.self_weights_.end(),
                                    [](double s) { return s > 0.0; });
  return g;
}

double WeightedGraph::mean_weighted_degree() const {
  if (n_ == 0) return 0.0;
  return std::accumulate(degree_.begin(), degree_.end(), 0.0) / static_cast<double>(n_);
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex p, Vertex q) const {
  if (p < 0 || q < 0 || p >= n_ || q >= n_) return std::nullopt;
  const auto nbrs = neighbors(p);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), q,
                                   [](const Incidence& a, Vertex v) { return a.to < v; });
  if (it == nbrs.end() || it->to != q) return std::nullopt;
  return it->edge;
}

WeightedGraph edge_subgraph(const WeightedGraph& g, std::span<const EdgeId> edge_ids) {
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  for (const EdgeId id : edge_ids) {
    if (id < 0 || id >= g.num_edges()) throw GraphError("edge index out of range");
    edges.push_back(g.edge(id));
  }
  return WeightedGraph::from_edges(g.num_vertices(), edges, g.self_weights());
}

void laplacian_apply(const WeightedGraph& g, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (x.size() != n || y.size() != n) {
    throw DimensionError("vector length does not match vertex count " + std::to_string(n));
  }
  const auto& self = g.self_weights();
  for (std::size_t v = 0; v < n; ++v) y[v] = self[v] * x[v];
  for (const Edge& e : g.edges()) {
    const double flow = e.w * (x[e.p] - x[e.q]);
    y[e.p] += flow;
    y[e.q] -= flow;
  }
}

VertexVector laplacian_apply(const WeightedGraph& g, std::span<const double> x) {
  VertexVector y(static_cast<std::size_t>(g.num_vertices()));
  laplacian_apply(g, x, y);
  return y;
}

double quadratic_form(const WeightedGraph& g, std::span<const double> x) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (x.size() != n) {
    throw DimensionError("vector length does not match vertex count " + std::to_string(n));
  }
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = x[e.p] - x[e.q];
    sum += e.w * d * d;
  }
  if (g.has_self_weights()) {
    const auto& self = g.self_weights();
    for (std::size_t v = 0; v < n; ++v) sum += self[v] * x[v] * x[v];
  }
  return sum;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot product of vectors of different length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double project_out_constant(std::span<double> x) {
  if (x.empty()) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  return mean;
}

}  // namespace specsparse
