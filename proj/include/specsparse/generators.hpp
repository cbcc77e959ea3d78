#pragma once

#include <cstdint>

#include "specsparse/graph.hpp"

namespace specsparse {

/// Edge weights for synthetic graphs: all ones, or uniform in [lo, hi).
struct Weighting {
  enum class Kind { kUnit, kUniformRandom };
  Kind kind = Kind::kUnit;
  std::uint64_t seed = 0;
  double lo = 1.0;
  double hi = 10.0;

  static Weighting unit() { return {}; }
  static Weighting uniform_random(std::uint64_t seed) {
    return {Kind::kUniformRandom, seed, 1.0, 10.0};
  }
};

/// Vertex (r, c) of a rows x cols mesh has index r * cols + c. Row 0 is the
/// top of the mesh. All horizontal edges come first (row-major), then all
/// vertical ones, so a horizontal edge wins every lowest-id tie against a
/// vertical one.
WeightedGraph generate_grid(int rows, int cols, const Weighting& weighting = Weighting::unit());

inline Vertex grid_vertex(int row, int col, int cols) { return row * cols + col; }

/// Random spanning tree (each vertex attached to an earlier one) plus
/// `extra_edges` distinct random chords, weights uniform in [0.5, 2).
WeightedGraph generate_random_connected(Vertex n, EdgeId extra_edges, std::uint64_t seed);

/// Unit-weight geometric graph on n uniform points in the unit square, edges
/// between points closer than `radius`; components are stitched together
/// through their closest point pairs.
WeightedGraph generate_random_geometric(Vertex n, double radius, std::uint64_t seed);

}  // namespace specsparse
