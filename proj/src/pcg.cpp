#include "specsparse/pcg.hpp"

#include <cmath>

namespace specsparse {

namespace {

constexpr int kResidualRefresh = 50;

double true_residual(const WeightedGraph& g, std::span<const double> x, std::span<const double> b,
                     std::span<double> r) {
  laplacian_apply(g, x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r);
}

}  // namespace

SolveResult pcg_solve(const WeightedGraph& g, const LaplacianSolver& preconditioner,
                      std::span<const double> b_in, double rel_tol, int max_iters) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (b_in.size() != n || preconditioner.size() != g.num_vertices()) {
    throw DimensionError("pcg length mismatch");
  }
  if (max_iters < 0) throw Error("max_iters must be nonnegative");
  const bool singular = !g.has_self_weights();

  SolveResult out;
  VertexVector b(b_in.begin(), b_in.end());
  if (singular) out.removed_mean = project_out_constant(b);
  out.x.assign(n, 0.0);
  const double nb = norm2(b);
  if (nb == 0.0) {
    out.converged = true;
    return out;
  }

  VertexVector r = b;
  VertexVector z(n), p(n), ap(n);
  preconditioner.solve(r, z);
  p = z;
  double rz = dot(r, z);
  double res = 1.0;
  for (int k = 1; k <= max_iters; ++k) {
    laplacian_apply(g, p, ap);
    const double curvature = dot(p, ap);
    if (!(curvature > 0.0)) throw SolverBreakdown("non-positive curvature in conjugate gradients");
    const double alpha = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      out.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    out.iterations = k;
    res = norm2(r) / nb;
    if (k % kResidualRefresh == 0 || res <= rel_tol) res = true_residual(g, out.x, b, r) / nb;
    out.residual_history.push_back(res);
    if (res <= rel_tol) break;
    preconditioner.solve(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (singular) project_out_constant(out.x);
  out.relative_residual = true_residual(g, out.x, b, r) / nb;
  out.converged = out.relative_residual <= rel_tol;
  return out;
}

}  // namespace specsparse
