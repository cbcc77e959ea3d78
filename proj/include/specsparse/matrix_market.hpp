#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "specsparse/graph.hpp"

namespace specsparse {

/// A graph read from an SDD matrix plus the diagnostics collected on the way.
struct MatrixMarketGraph {
  WeightedGraph graph;
  /// Positive off-diagonal entries (unordered pairs) that were dropped.
  int dropped_positive = 0;
  /// Rows whose diagonal fell short of the off-diagonal absolute sum by more
  /// than the tolerance; their self weight was clamped to zero.
  int non_sdd_rows = 0;
};

class MatrixMarketError : public Error {
 public:
  using Error::Error;
};

/// Relative tolerance (against the row absolute sum) for SDD validation.
inline constexpr double kSddTolerance = 1e-9;

/// Reads a real (or integer) coordinate matrix with a symmetric pattern.
/// Negative off-diagonals become edges, positive ones are dropped and
/// counted, and the diagonal surplus becomes the self weight.
MatrixMarketGraph read_matrix_market(const std::filesystem::path& path);
MatrixMarketGraph read_matrix_market(std::istream& in);

/// Writes the Laplacian (self weights on the diagonal) as a symmetric real
/// coordinate matrix: diagonal entries first, then one lower-triangular
/// entry per edge.
void write_matrix_market(const std::filesystem::path& path, const WeightedGraph& g);
void write_matrix_market(std::ostream& out, const WeightedGraph& g);

}  // namespace specsparse
