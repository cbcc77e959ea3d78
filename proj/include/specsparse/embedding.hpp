#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "specsparse/factorization.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/sparsifier.hpp"

namespace specsparse {

/// Joule heat of every off-tree edge (edges of G missing from P).
struct HeatReport {
  /// Off-tree edge ids of G, ascending; the arrays below are parallel to it.
  std::vector<EdgeId> edges;
  /// Heat summed over the random vectors.
  std::vector<double> raw_heat;
  /// raw_heat / max raw_heat. Only the first ranked edge is exactly 1.
  std::vector<double> normalized_heat;
  int t = 0;
  int r = 0;
  std::uint64_t seed = 0;
  /// Sum of raw_heat, and sum over vectors of h^T (L_G - L_P) h evaluated
  /// through the two Laplacians.
  double heat_total = 0.0;
  double quadratic_gap = 0.0;
};

struct HeatConfig {
  int t = 2;
  /// 0 picks default_vector_count(n).
  int r = 0;
  std::uint64_t seed = 42;
  int threads = 1;
};

/// max(4, ceil(log2 n)).
int default_vector_count(Vertex n);

/// h_t = (L_P^+ L_G)^t h0 without normalization; h0 and every iterate are
/// kept orthogonal to the all-ones vector.
VertexVector generalized_power_iterate(const WeightedGraph& g, const LaplacianSolver& solver,
                                       std::span<const double> h0, int t);

/// Single-vector heat w (h(p) - h(q))^2 for every off-tree edge of P.
HeatReport edge_joule_heat(const WeightedGraph& g, const Sparsifier& p, std::span<const double> h);

/// Heat summed over r Rademacher start vectors drawn from `seed`.
HeatReport aggregate_heat(const WeightedGraph& g, const Sparsifier& p, const HeatConfig& config = {});

/// Off-tree edge ids by descending raw heat, ties by ascending edge id.
std::vector<EdgeId> rank_edges(const HeatReport& report);

/// Tab-separated `p q raw_heat normalized_heat` rows in rank order.
void write_heat_table(std::ostream& out, const WeightedGraph& g, const HeatReport& report);

}  // namespace specsparse
