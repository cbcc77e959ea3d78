#include "specsparse/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace specsparse {

namespace {

constexpr double kJacobiTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

// Frobenius norm of the off-diagonal part, read from the upper triangle.
double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 1; j < a.cols(); ++j) s += a.col(j).head(j).squaredNorm();
  return std::sqrt(2.0 * s);
}

// Both matrices restricted to the grounded coordinates.
struct Pencil {
  Eigen::MatrixXd lg;
  Eigen::MatrixXd lp;
  bool grounded = false;
};

Pencil make_pencil(const WeightedGraph& g, const WeightedGraph& p) {
  const Vertex n = g.num_vertices();
  if (p.num_vertices() != n) throw DimensionError("pencil size mismatch");
  if (n > kDenseMaxVertices) {
    throw Error("dense oracle limited to " + std::to_string(kDenseMaxVertices) + " vertices");
  }
  Pencil out;
  out.lg = dense_laplacian(g);
  out.lp = dense_laplacian(p);
  if (p.has_self_weights()) return out;
  if (g.has_self_weights()) throw Error("L_P is singular where L_G is not");
  out.grounded = true;
  const Eigen::Index m = n - 1;
  out.lg = out.lg.bottomRightCorner(m, m).eval();
  out.lp = out.lp.bottomRightCorner(m, m).eval();
  return out;
}

}  // namespace

Eigen::MatrixXd dense_laplacian(const WeightedGraph& g) {
  const Vertex n = g.num_vertices();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.p, e.p) += e.w;
    l(e.q, e.q) += e.w;
    l(e.p, e.q) -= e.w;
    l(e.q, e.p) -= e.w;
  }
  for (Vertex v = 0; v < n; ++v) l(v, v) += g.self_weight(v);
  return l;
}

JacobiResult jacobi_eigen(Eigen::MatrixXd a, bool want_vectors) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DimensionError("jacobi needs a square matrix");
  JacobiResult out;
  out.norm = a.norm();
  if (want_vectors) out.eigenvectors = Eigen::MatrixXd::Identity(n, n);
  out.off_norm = off_diagonal_norm(a);
  // Only the upper triangle is kept current; a(i, j) with i < j lives at
  // d[i + j * n].
  double* d = a.data();
  auto at = [&](Eigen::Index i, Eigen::Index j) -> double& { return d[i + j * n]; };
  while (out.off_norm > kJacobiTolerance * out.norm && out.sweeps < kJacobiMaxSweeps) {
    ++out.sweeps;
    for (Eigen::Index q = 1; q < n; ++q) {
      for (Eigen::Index p = 0; p < q; ++p) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // Below the rounding of both diagonal entries: drop it.
        if (out.sweeps > 4 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          at(p, q) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        double* cp = d + p * n;
        double* cq = d + q * n;
        for (Eigen::Index k = 0; k < p; ++k) {
          const double x = cp[k];
          const double y = cq[k];
          cp[k] = c * x - s * y;
          cq[k] = s * x + c * y;
        }
        for (Eigen::Index k = p + 1; k < q; ++k) {
          double& x = at(p, k);
          const double y = cq[k];
          const double xp = x;
          x = c * xp - s * y;
          cq[k] = s * xp + c * y;
        }
        for (Eigen::Index k = q + 1; k < n; ++k) {
          double& x = at(p, k);
          double& y = at(q, k);
          const double xp = x;
          const double yq = y;
          x = c * xp - s * yq;
          y = s * xp + c * yq;
        }
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        if (want_vectors) {
          double* vp = out.eigenvectors.col(p).data();
          double* vq = out.eigenvectors.col(q).data();
          for (Eigen::Index k = 0; k < n; ++k) {
            const double xp = vp[k];
            const double xq = vq[k];
            vp[k] = c * xp - s * xq;
            vq[k] = s * xp + c * xq;
          }
        }
      }
    }
    out.off_norm = off_diagonal_norm(a);
  }
  if (out.off_norm > 1e-12 * out.norm) throw Error("jacobi did not converge");
  out.eigenvalues = a.diagonal();
  return out;
}

DenseSpectrum dense_generalized_eigs(const WeightedGraph& g, const WeightedGraph& p,
                                     bool want_vectors) {
  const Pencil pencil = make_pencil(g, p);
  const Eigen::LLT<Eigen::MatrixXd> chol(pencil.lp);
  if (chol.info() != Eigen::Success) throw FactorizationError("dense L_P is not positive definite", -1);
  const auto lower = chol.matrixL();
  // A = C^{-1} L_G C^{-T}
  Eigen::MatrixXd a = lower.solve(pencil.lg);
  a = lower.solve(a.transpose()).eval();
  a = (0.5 * (a + a.transpose())).eval();

  const auto jac = jacobi_eigen(std::move(a), want_vectors);
  const Eigen::Index m = jac.eigenvalues.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return jac.eigenvalues(x) > jac.eigenvalues(y);
  });

  DenseSpectrum out;
  out.sweeps = jac.sweeps;
  const Vertex n = g.num_vertices();
  for (const auto k : order) {
    out.eigenvalues.push_back(jac.eigenvalues(k));
    if (!want_vectors) continue;
    const Eigen::VectorXd u = lower.transpose().solve(jac.eigenvectors.col(k));
    VertexVector full(static_cast<std::size_t>(n), 0.0);
    const Eigen::Index offset = pencil.grounded ? 1 : 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) full[static_cast<std::size_t>(i + offset)] = u(i);
    if (pencil.grounded) project_out_constant(full);
    out.eigenvectors.push_back(std::move(full));
  }
  return out;
}

double dense_trace_ratio(const WeightedGraph& g, const WeightedGraph& p) {
  const Pencil pencil = make_pencil(g, p);
  const Eigen::LLT<Eigen::MatrixXd> chol(pencil.lp);
  if (chol.info() != Eigen::Success) throw FactorizationError("dense L_P is not positive definite", -1);
  return chol.solve(pencil.lg).trace();
}

}  // namespace specsparse
