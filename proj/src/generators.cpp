#include "specsparse/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "specsparse/random.hpp"

namespace specsparse {

WeightedGraph generate_grid(int rows, int cols, const Weighting& weighting) {
  if (rows < 2 || cols < 2) {
    throw GraphError("grid dimensions must be at least 2x2, got " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  std::mt19937_64 rng(derive_seed(weighting.seed, static_cast<std::uint64_t>(Stream::kGraph)));
  std::uniform_real_distribution<double> dist(weighting.lo, weighting.hi);
  auto weight = [&]() {
    return weighting.kind == Weighting::Kind::kUnit ? 1.0 : dist(rng);
  };

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2 * rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      edges.push_back({grid_vertex(r, c, cols), grid_vertex(r, c + 1, cols), weight()});
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      edges.push_back({grid_vertex(r, c, cols), grid_vertex(r + 1, c, cols), weight()});
    }
  }
  return WeightedGraph::from_edges(rows * cols, edges);
}

WeightedGraph generate_random_connected(Vertex n, EdgeId extra_edges, std::uint64_t seed) {
  if (n < 2) throw GraphError("random graph needs at least two vertices");
  auto rng = make_rng(seed, Stream::kGraph);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> pick(0, v - 1);
    const Vertex u = pick(rng);
    used.insert({u, v});
    edges.push_back({u, v, weight(rng)});
  }
  const auto max_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const auto target = std::min<std::int64_t>(max_pairs, static_cast<std::int64_t>(n - 1) + extra_edges);
  std::uniform_int_distribution<Vertex> any(0, n - 1);
  while (static_cast<std::int64_t>(edges.size()) < target) {
    Vertex a = any(rng);
    Vertex b = any(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) continue;
    edges.push_back({a, b, weight(rng)});
  }
  return WeightedGraph::from_edges(n, edges);
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<Vertex>(i);
  }
  Vertex find(Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<Vertex> parent;
};

}  // namespace

WeightedGraph generate_random_geometric(Vertex n, double radius, std::uint64_t seed) {
  if (n < 2) throw GraphError("random geometric graph needs at least two vertices");
  if (!(radius > 0.0)) throw GraphError("radius must be positive");
  auto rng = make_rng(seed, Stream::kGraph);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) p = {coord(rng), coord(rng)};

  auto dist2 = [&](Vertex a, Vertex b) {
    const double dx = pts[a].first - pts[b].first;
    const double dy = pts[a].second - pts[b].second;
    return dx * dx + dy * dy;
  };

  const int cells = std::max(1, static_cast<int>(1.0 / radius));
  std::vector<std::vector<Vertex>> bucket(static_cast<std::size_t>(cells * cells));
  auto cell_of = [&](double x) { return std::min(cells - 1, static_cast<int>(x * cells)); };
  for (Vertex v = 0; v < n; ++v) {
    bucket[cell_of(pts[v].first) * cells + cell_of(pts[v].second)].push_back(v);
  }

  std::vector<Edge> edges;
  DisjointSets sets(static_cast<std::size_t>(n));
  const double r2 = radius * radius;
  for (Vertex v = 0; v < n; ++v) {
    const int cx = cell_of(pts[v].first);
    const int cy = cell_of(pts[v].second);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const int x = cx + dx;
        const int y = cy + dy;
        if (x < 0 || y < 0 || x >= cells || y >= cells) continue;
        for (const Vertex u : bucket[x * cells + y]) {
          if (u > v && dist2(u, v) < r2) {
            edges.push_back({v, u, 1.0});
            sets.unite(v, u);
          }
        }
      }
    }
  }

  // Stitch components: repeatedly join the component of vertex 0 to its
  // nearest outside vertex.
  for (;;) {
    const Vertex root = sets.find(0);
    double best = std::numeric_limits<double>::infinity();
    Vertex a = -1;
    Vertex b = -1;
    for (Vertex u = 0; u < n; ++u) {
      if (sets.find(u) != root) continue;
      for (Vertex v = 0; v < n; ++v) {
        if (sets.find(v) == root) continue;
        const double d = dist2(u, v);
        if (d < best) {
          best = d;
          a = u;
          b = v;
        }
      }
    }
    if (a < 0) break;
    edges.push_back({a, b, 1.0});
    sets.unite(a, b);
  }
  return WeightedGraph::from_edges(n, edges);
}

}  // namespace specsparse
