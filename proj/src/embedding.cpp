#include "specsparse/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "specsparse/random.hpp"

namespace specsparse {

namespace {

// Neumaier summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// h^T (L_G - L_P) h through the two Laplacians, independent of the per-edge loop.
double quadratic_gap(const WeightedGraph& g, const WeightedGraph& p, std::span<const double> h) {
  const auto lg = laplacian_apply(g, h);
  const auto lp = laplacian_apply(p, h);
  CompensatedSum s;
  for (std::size_t v = 0; v < h.size(); ++v) s.add(h[v] * (lg[v] - lp[v]));
  return s.value();
}

HeatReport empty_report(const Sparsifier& p) {
  HeatReport report;
  const auto off = p.offtree_edges();
  report.edges.assign(off.begin(), off.end());
  report.raw_heat.assign(off.size(), 0.0);
  report.normalized_heat.assign(off.size(), 0.0);
  return report;
}

void finish(HeatReport& report) {
  CompensatedSum total;
  double heat_max = 0.0;
  for (const double h : report.raw_heat) {
    total.add(h);
    heat_max = std::max(heat_max, h);
  }
  report.heat_total = total.value();
  if (heat_max <= 0.0) return;
  bool seen_max = false;
  for (std::size_t k = 0; k < report.raw_heat.size(); ++k) {
    const double h = report.raw_heat[k];
    if (h == heat_max) {
      // Edges are ascending, so the first hit is the tie winner.
      report.normalized_heat[k] = seen_max ? std::nextafter(1.0, 0.0) : 1.0;
      seen_max = true;
    } else {
      report.normalized_heat[k] = std::min(h / heat_max, std::nextafter(1.0, 0.0));
    }
  }
}

}  // namespace

int default_vector_count(Vertex n) {
  const auto un = static_cast<std::uint64_t>(std::max<Vertex>(n, 1));
  // ceil(log2 n) = bit width of n - 1.
  const int lg = static_cast<int>(std::bit_width(un - 1));
  return std::max(4, lg);
}

VertexVector generalized_power_iterate(const WeightedGraph& g, const LaplacianSolver& solver,
                                       std::span<const double> h0, int t) {
  if (t < 1) throw Error("power iteration needs t >= 1");
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (h0.size() != n || solver.size() != g.num_vertices()) {
    throw DimensionError("power iteration length mismatch");
  }
  // A grounded (self-weighted) pencil has no nullspace to remove.
  const bool project = solver.singular();
  VertexVector x(h0.begin(), h0.end());
  if (project) project_out_constant(x);
  if (norm2(x) == 0.0) throw Error("power iteration start vector is zero");
  VertexVector y(n);
  for (int step = 0; step < t; ++step) {
    laplacian_apply(g, x, y);
    solver.solve(y, x);
    if (project) project_out_constant(x);
  }
  return x;
}

HeatReport edge_joule_heat(const WeightedGraph& g, const Sparsifier& p, std::span<const double> h) {
  if (h.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw DimensionError("heat vector length mismatch");
  }
  HeatReport report = empty_report(p);
  report.r = 1;
  for (std::size_t k = 0; k < report.edges.size(); ++k) {
    const Edge& e = g.edge(report.edges[k]);
    const double d = h[e.p] - h[e.q];
    report.raw_heat[k] = e.w * d * d;
  }
  report.quadratic_gap = quadratic_gap(g, p.graph(), h);
  finish(report);
  return report;
}

HeatReport aggregate_heat(const WeightedGraph& g, const Sparsifier& p, const HeatConfig& config) {
  const Vertex n = g.num_vertices();
  const int r = config.r > 0 ? config.r : default_vector_count(n);
  const int workers = std::max(1, config.threads);

  HeatReport report = empty_report(p);
  report.t = config.t;
  report.r = r;
  report.seed = config.seed;
  std::vector<double> carry(report.edges.size(), 0.0);
  CompensatedSum gap;

  // Vectors are computed in batches of `workers` and merged in index order.
  std::vector<VertexVector> batch(static_cast<std::size_t>(std::min(workers, r)));
  auto compute = [&](int j, VertexVector& out) {
    auto rng = make_rng(config.seed, Stream::kHeat, static_cast<std::uint64_t>(j));
    const auto h0 = rademacher_vector(static_cast<std::size_t>(n), rng);
    out = generalized_power_iterate(g, p.solver(), h0, config.t);
  };
  for (int first = 0; first < r; first += workers) {
    const int count = std::min(workers, r - first);
    if (count == 1) {
      compute(first, batch[0]);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(count));
      for (int k = 0; k < count; ++k) {
        pool.emplace_back([&, k] { compute(first + k, batch[static_cast<std::size_t>(k)]); });
      }
    }
    for (int k = 0; k < count; ++k) {
      const auto& h = batch[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < report.edges.size(); ++i) {
        const Edge& e = g.edge(report.edges[i]);
        const double d = h[e.p] - h[e.q];
        const double x = e.w * d * d;
        double& s = report.raw_heat[i];
        const double t = s + x;
        carry[i] += s >= x ? (s - t) + x : (x - t) + s;
        s = t;
      }
      gap.add(quadratic_gap(g, p.graph(), h));
    }
  }
  for (std::size_t i = 0; i < carry.size(); ++i) report.raw_heat[i] += carry[i];
  report.quadratic_gap = gap.value();
  finish(report);
  return report;
}

std::vector<EdgeId> rank_edges(const HeatReport& report) {
  std::vector<std::size_t> order(report.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (report.raw_heat[a] != report.raw_heat[b]) return report.raw_heat[a] > report.raw_heat[b];
    return report.edges[a] < report.edges[b];
  });
  std::vector<EdgeId> ranked;
  ranked.reserve(order.size());
  for (const auto k : order) ranked.push_back(report.edges[k]);
  return ranked;
}

void write_heat_table(std::ostream& out, const WeightedGraph& g, const HeatReport& report) {
  std::vector<std::size_t> order(report.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.raw_heat[a] > report.raw_heat[b];
  });
  const auto old_precision = out.precision(17);
  out << "p\tq\traw_heat\tnormalized_heat\n";
  for (const auto k : order) {
    const Edge& e = g.edge(report.edges[k]);
    out << e.p << '\t' << e.q << '\t' << report.raw_heat[k] << '\t' << report.normalized_heat[k]
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace specsparse
