#include "specsparse/matrix_market.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace specsparse {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

MatrixMarketGraph read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open " + path.string());
  return read_matrix_market(in);
}

MatrixMarketGraph read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MatrixMarketError("empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
    throw MatrixMarketError("missing %%MatrixMarket matrix banner");
  }
  if (lower(format) != "coordinate") throw MatrixMarketError("only coordinate format is supported");
  field = lower(field);
  if (field != "real" && field != "integer") {
    throw MatrixMarketError("field must be real or integer, got " + field);
  }
  symmetry = lower(symmetry);
  if (symmetry != "symmetric" && symmetry != "general") {
    throw MatrixMarketError("symmetry must be symmetric or general, got " + symmetry);
  }

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  long long rows = 0, cols = 0, entries = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> entries)) throw MatrixMarketError("bad size line");
  }
  if (rows != cols || rows < 1) throw MatrixMarketError("matrix must be square");
  const auto n = static_cast<Vertex>(rows);

  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  // Off-diagonal entries keyed by (row, col) as read, 0-based.
  std::map<std::pair<Vertex, Vertex>, double> offdiag;
  for (long long k = 0; k < entries; ++k) {
    long long i = 0, j = 0;
    double value = 0.0;
    if (!(in >> i >> j >> value)) {
      throw MatrixMarketError("expected " + std::to_string(entries) + " entries, got " +
                              std::to_string(k));
    }
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw MatrixMarketError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range");
    }
    const auto r = static_cast<Vertex>(i - 1);
    const auto c = static_cast<Vertex>(j - 1);
    if (r == c) {
      diag[r] += value;
    } else if (symmetry == "symmetric") {
      offdiag[{std::max(r, c), std::min(r, c)}] += value;
    } else {
      offdiag[{r, c}] += value;
    }
  }

  // Reduce to one value per unordered pair.
  std::map<std::pair<Vertex, Vertex>, double> pairs;
  if (symmetry == "symmetric") {
    pairs = std::move(offdiag);
  } else {
    for (const auto& [key, value] : offdiag) {
      const auto [r, c] = key;
      const auto mirror = offdiag.find({c, r});
      if (mirror == offdiag.end() ||
          std::abs(mirror->second - value) > 1e-12 * std::max(std::abs(value), 1.0)) {
        throw MatrixMarketError("asymmetric pattern at entry (" + std::to_string(r + 1) + "," +
                                std::to_string(c + 1) + ")");
      }
      if (r > c) pairs[key] = value;
    }
  }

  MatrixMarketGraph result;
  std::vector<double> abs_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<Edge> edges;
  for (const auto& [key, value] : pairs) {
    const auto [r, c] = key;
    abs_sum[r] += std::abs(value);
    abs_sum[c] += std::abs(value);
    if (value < 0.0) {
      edges.push_back({c, r, -value});
    } else if (value > 0.0) {
      ++result.dropped_positive;
    }
  }

  std::vector<double> self(static_cast<std::size_t>(n), 0.0);
  for (Vertex v = 0; v < n; ++v) {
    const double surplus = diag[v] - abs_sum[v];
    const double tol = kSddTolerance * (std::abs(diag[v]) + abs_sum[v]);
    if (surplus > tol) {
      self[v] = surplus;
    } else if (surplus < -tol) {
      ++result.non_sdd_rows;
    }
  }
  result.graph = WeightedGraph::from_edges(n, edges, std::move(self));
  return result;
}

void write_matrix_market(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw MatrixMarketError("cannot write " + path.string());
  write_matrix_market(out, g);
  if (!out) throw MatrixMarketError("write failed for " + path.string());
}

void write_matrix_market(std::ostream& out, const WeightedGraph& g) {
  char buf[64];
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.num_vertices() << ' ' << g.num_vertices() << ' '
      << (static_cast<long long>(g.num_vertices()) + g.num_edges()) << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g", g.diagonal(v));
    out << (v + 1) << ' ' << (v + 1) << ' ' << buf << '\n';
  }
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", -e.w);
    out << (e.q + 1) << ' ' << (e.p + 1) << ' ' << buf << '\n';
  }
}

}  // namespace specsparse
