#include "specsparse/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specsparse/random.hpp"

namespace specsparse {

LambdaMaxEstimate estimate_lambda_max(const WeightedGraph& g, const WeightedGraph& p,
                                      const LaplacianSolver& solver, int max_iters, double rel_tol,
                                      std::uint64_t seed, std::span<const double> start) {
  if (max_iters < 1) throw Error("lambda_max estimate needs max_iters >= 1");
  const Vertex n = g.num_vertices();
  if (p.num_vertices() != n || solver.size() != n) throw DimensionError("pencil size mismatch");

  VertexVector h;
  if (start.empty()) {
    auto rng = make_rng(seed, Stream::kLambdaMax);
    h = rademacher_vector(static_cast<std::size_t>(n), rng);
  } else {
    if (start.size() != static_cast<std::size_t>(n)) throw DimensionError("start vector length mismatch");
    h.assign(start.begin(), start.end());
    if (solver.singular()) project_out_constant(h);
  }
  VertexVector y(h.size());
  auto rayleigh = [&] { return quadratic_form(g, h) / quadratic_form(p, h); };

  LambdaMaxEstimate out;
  double previous = rayleigh();
  for (int k = 1; k <= max_iters; ++k) {
    laplacian_apply(g, h, y);
    solver.solve(y, h);
    if (solver.singular()) project_out_constant(h);
    const double scale = norm2(h);
    if (!(scale > 0.0)) throw SolverBreakdown("power iterate vanished");
    for (auto& x : h) x /= scale;
    out.value = rayleigh();
    out.iterations = k;
    if (std::abs(out.value - previous) < rel_tol * std::abs(out.value)) break;
    previous = out.value;
  }
  out.value = std::max(out.value, 1.0);
  out.vector = std::move(h);
  return out;
}

double estimate_lambda_min(const WeightedGraph& g, const WeightedGraph& p) {
  if (p.num_vertices() != g.num_vertices()) throw DimensionError("pencil size mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double dp = p.diagonal(v);
    if (dp > 0.0) best = std::min(best, g.diagonal(v) / dp);
  }
  return std::max(best, 1.0);
}

SimilarityEstimate estimate_similarity(const WeightedGraph& g, const WeightedGraph& p,
                                       const LaplacianSolver& solver, int max_iters,
                                       double rel_tol, std::uint64_t seed,
                                       std::span<const double> start) {
  SimilarityEstimate s;
  auto top = estimate_lambda_max(g, p, solver, max_iters, rel_tol, seed, start);
  s.vector = std::move(top.vector);
  s.lambda_max = top.value;
  s.iterations = top.iterations;
  s.lambda_min = estimate_lambda_min(g, p);
  s.sigma2 = std::max(1.0, s.lambda_max / s.lambda_min);
  return s;
}

double heat_threshold(double target_sigma2, double lambda_min, double lambda_max, int t) {
  if (target_sigma2 < 1.0) throw Error("target sigma^2 must be at least 1");
  if (t < 1) throw Error("threshold needs t >= 1");
  const double base = target_sigma2 * lambda_min / lambda_max;
  if (base >= 1.0) return 1.0;
  const double theta = std::pow(base, 2 * t + 1);
  return std::max(theta, std::numeric_limits<double>::min());
}

long long unique_edge_budget(double lambda_max, double target_lambda_max) {
  if (!(target_lambda_max > 0.0)) throw Error("target lambda_max must be positive");
  const double k = std::ceil(2.0 * lambda_max / target_lambda_max - 1.0);
  return k > 0.0 ? static_cast<long long>(k) : 0;
}

}  // namespace specsparse
