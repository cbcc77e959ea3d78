#include "specsparse/partition.hpp"

#include <algorithm>
#include <limits>

#include "specsparse/pcg.hpp"
#include "specsparse/random.hpp"

namespace specsparse {

FiedlerResult fiedler_approx(const WeightedGraph& g, const LaplacianSolver& preconditioner,
                             const FiedlerOptions& options) {
  if (options.iters < 1) throw Error("fiedler iteration needs iters >= 1");
  const auto n = static_cast<std::size_t>(g.num_vertices());
  const bool deflate = !g.has_self_weights();

  auto rng = make_rng(options.seed, Stream::kFiedler);
  VertexVector x = rademacher_vector(n, rng);
  FiedlerResult out;
  for (int k = 0; k < options.iters; ++k) {
    const auto step = pcg_solve(g, preconditioner, x, options.inner_tol, options.inner_max_iters);
    out.inner_iterations += step.iterations;
    x = step.x;
    if (deflate) project_out_constant(x);
    const double scale = norm2(x);
    if (!(scale > 0.0)) throw SolverBreakdown("inverse iterate vanished");
    for (auto& v : x) v /= scale;
    out.rayleigh_history.push_back(quadratic_form(g, x));
  }
  out.vector = std::move(x);
  return out;
}

PartitionResult sign_cut(const WeightedGraph& g, std::span<const double> v) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (v.size() != n) throw DimensionError("sign_cut length mismatch");
  PartitionResult out;
  out.fiedler_estimate.assign(v.begin(), v.end());
  out.signs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.signs[i] = v[i] >= 0.0 ? 1 : -1;
    (out.signs[i] > 0 ? out.positive : out.negative) += 1;
  }
  out.balance_ratio = out.negative > 0 ? static_cast<double>(out.positive) / out.negative
                                       : std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) {
    if (out.signs[static_cast<std::size_t>(e.p)] != out.signs[static_cast<std::size_t>(e.q)]) {
      out.cut_weight += e.w;
    }
  }
  return out;
}

double partition_disagreement(const PartitionResult& a, const PartitionResult& b) {
  if (a.signs.size() != b.signs.size()) throw DimensionError("partitions differ in size");
  if (a.signs.empty()) return 0.0;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.signs.size(); ++i) diff += a.signs[i] != b.signs[i];
  const std::size_t n = a.signs.size();
  return static_cast<double>(std::min(diff, n - diff)) / static_cast<double>(n);
}

}  // namespace specsparse
