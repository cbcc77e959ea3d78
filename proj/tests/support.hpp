#pragma once

#include <cmath>
#include <vector>

#include <doctest.h>

#include "specsparse/embedding.hpp"
#include "specsparse/graph.hpp"

namespace specsparse::test {

inline WeightedGraph unit_triangle() {
  const std::vector<Edge> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  return WeightedGraph::from_edges(3, edges);
}

inline WeightedGraph unit_path(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

inline double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Every aggregated heat in the unit suite goes through here so the
/// heat-sum identity is checked on all of them.
inline HeatReport checked_heat(const WeightedGraph& g, const Sparsifier& p, const HeatConfig& cfg) {
  auto report = aggregate_heat(g, p, cfg);
  CHECK(relative_gap(report.heat_total, report.quadratic_gap) <= 1e-10);
  return report;
}

}  // namespace specsparse::test
