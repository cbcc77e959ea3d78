// Low-stretch spanning tree heuristic.
//
// Each level partitions the current (contracted) graph into balls with
// exponentially shifted multi-source Dijkstra on the resistance metric
// 1/w. The shortest-path forest inside every ball joins the tree, the balls
// are contracted, and the next level repeats with a larger radius until one
// vertex remains.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "specsparse/random.hpp"
#include "specsparse/spanning_tree.hpp"

namespace specsparse {

namespace {

struct SuperEdge {
  Vertex a;
  Vertex b;
  double length;
  EdgeId original;
};

struct Level {
  Vertex count = 0;
  std::vector<SuperEdge> edges;
};

// Collapses parallel super edges to the shortest one (lowest original id on ties).
std::vector<SuperEdge> dedupe(std::vector<SuperEdge> edges) {
  for (auto& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const SuperEdge& x, const SuperEdge& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.length != y.length) return x.length < y.length;
    return x.original < y.original;
  });
  std::vector<SuperEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (!out.empty() && out.back().a == e.a && out.back().b == e.b) continue;
    out.push_back(e);
  }
  return out;
}

double median_length(const std::vector<SuperEdge>& edges) {
  if (edges.empty()) return 0.0;
  std::vector<double> lengths;
  lengths.reserve(edges.size());
  for (const auto& e : edges) lengths.push_back(e.length);
  const auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  return *mid;
}

// One ball-growing pass. Returns the cluster of every super vertex and
// appends the forest edges (original ids) to `tree`.
std::vector<Vertex> grow_balls(const Level& level, double radius, std::mt19937_64& rng,
                               std::vector<EdgeId>& tree) {
  const auto n = static_cast<std::size_t>(level.count);
  std::vector<Vertex> offsets(n + 1, 0);
  for (const auto& e : level.edges) {
    ++offsets[e.a + 1];
    ++offsets[e.b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<std::size_t> incident(static_cast<std::size_t>(offsets[n]));
  {
    std::vector<Vertex> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < level.edges.size(); ++k) {
      incident[fill[level.edges[k].a]++] = k;
      incident[fill[level.edges[k].b]++] = k;
    }
  }

  std::exponential_distribution<double> shift(1.0 / radius);
  std::vector<double> delta(n);
  double max_delta = 0.0;
  for (auto& d : delta) {
    d = shift(rng);
    max_delta = std::max(max_delta, d);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<Vertex> owner(n, -1);
  std::vector<std::ptrdiff_t> via(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) {
    dist[v] = max_delta - delta[v];
    owner[v] = static_cast<Vertex>(v);
    heap.push({dist[v], static_cast<Vertex>(v)});
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d > dist[v]) continue;
    done[v] = 1;
    if (via[v] >= 0) tree.push_back(level.edges[static_cast<std::size_t>(via[v])].original);
    for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
      const auto& e = level.edges[incident[k]];
      const Vertex u = e.a == v ? e.b : e.a;
      if (done[u]) continue;
      const double nd = d + e.length;
      if (nd < dist[u]) {
        dist[u] = nd;
        owner[u] = owner[v];
        via[u] = static_cast<std::ptrdiff_t>(incident[k]);
        heap.push({nd, u});
      }
    }
  }
  return owner;
}

std::vector<EdgeId> ball_growing_tree(const WeightedGraph& g, double radius_scale,
                                      std::mt19937_64& rng) {
  Level level;
  level.count = g.num_vertices();
  level.edges.reserve(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    level.edges.push_back({g.edge(e).p, g.edge(e).q, 1.0 / g.edge(e).w, e});
  }

  std::vector<EdgeId> tree;
  tree.reserve(static_cast<std::size_t>(g.num_vertices()));
  double radius = radius_scale * median_length(level.edges);
  while (level.count > 1) {
    const auto owner = grow_balls(level, radius, rng, tree);

    std::vector<Vertex> relabel(owner.size(), -1);
    Level next;
    for (const Vertex o : owner) {
      if (relabel[o] < 0) relabel[o] = next.count++;
    }
    for (const auto& e : level.edges) {
      const Vertex a = relabel[owner[e.a]];
      const Vertex b = relabel[owner[e.b]];
      if (a != b) next.edges.push_back({a, b, e.length, e.original});
    }
    next.edges = dedupe(std::move(next.edges));
    // Balls at the next level already span about `radius`; grow geometrically.
    if (next.count == level.count) {
      radius *= 2.0;
    } else {
      radius = std::max(radius * 2.0, radius_scale * median_length(next.edges));
    }
    level = std::move(next);
  }
  return tree;
}

}  // namespace

SpanningTree low_stretch_spanning_tree(const WeightedGraph& g, std::uint64_t seed, int trials) {
  SpanningTree best = max_weight_spanning_tree(g);
  double best_stretch = total_stretch(g, best);
  if (g.num_vertices() < 3) return best;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = make_rng(seed, Stream::kTree, static_cast<std::uint64_t>(trial));
    // Radius multipliers follow the schedule 2, 4, 8, ...
    const double scale = std::ldexp(1.0, trial + 1);
    const auto edges = ball_growing_tree(g, scale, rng);
    SpanningTree candidate = SpanningTree::from_edges(g, edges);
    const double stretch = total_stretch(g, candidate);
    if (stretch < best_stretch) {
      best_stretch = stretch;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace specsparse
