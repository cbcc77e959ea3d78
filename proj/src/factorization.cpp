#include "specsparse/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/OrderingMethods>

namespace specsparse {

std::vector<int> low_degree_elimination_order(int n, const int* outer, const int* inner) {
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> adj(nn);
  std::vector<int> degree(nn, 0);
  for (int v = 0; v < n; ++v) {
    for (int k = outer[v]; k < outer[v + 1]; ++k) {
      if (inner[k] != v) adj[v].push_back(inner[k]);
    }
    degree[v] = static_cast<int>(adj[v].size());
  }

  std::vector<char> gone(nn, 0);
  std::vector<int> order;
  order.reserve(nn);
  auto live_neighbors = [&](int v) {
    std::vector<int> out;
    for (const int u : adj[v]) {
      if (!gone[u]) out.push_back(u);
    }
    return out;
  };
  auto adjacent = [&](int a, int b) {
    const bool a_shorter = adj[a].size() <= adj[b].size();
    const auto& list = a_shorter ? adj[a] : adj[b];
    const int other = a_shorter ? b : a;
    return std::find(list.begin(), list.end(), other) != list.end();
  };
  // Leaves first (zero fill); a degree-2 vertex only when no leaf is left.
  // Both are stacks, so consecutive pivots tend to be graph neighbors.
  std::vector<int> leaves;
  std::vector<int> chains;
  for (int v = n - 1; v >= 0; --v) {
    if (degree[v] <= 1) leaves.push_back(v);
  }
  for (int v = n - 1; v >= 0; --v) {
    if (degree[v] == 2) chains.push_back(v);
  }
  while (!leaves.empty() || !chains.empty()) {
    auto& from = leaves.empty() ? chains : leaves;
    const int v = from.back();
    from.pop_back();
    if (gone[v] || degree[v] > 2) continue;
    const auto nb = live_neighbors(v);
    gone[v] = 1;
    order.push_back(v);
    if (nb.size() == 2 && !adjacent(nb[0], nb[1])) {
      adj[nb[0]].push_back(nb[1]);
      adj[nb[1]].push_back(nb[0]);
    } else {
      for (const int u : nb) --degree[u];
    }
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (degree[*it] <= 1) {
        leaves.push_back(*it);
      } else if (degree[*it] == 2) {
        chains.push_back(*it);
      }
    }
  }

  // Remaining core (all degrees >= 3, fill edges included) goes to AMD.
  std::vector<int> core;
  std::vector<int> local(nn, -1);
  for (int v = 0; v < n; ++v) {
    if (!gone[v]) {
      local[v] = static_cast<int>(core.size());
      core.push_back(v);
    }
  }
  if (!core.empty()) {
    const auto c = static_cast<Eigen::Index>(core.size());
    std::vector<Eigen::Triplet<double>> entries;
    for (const int v : core) {
      entries.emplace_back(local[v], local[v], 1.0);
      for (const int u : adj[v]) {
        if (!gone[u]) entries.emplace_back(local[v], local[u], 1.0);
      }
    }
    Eigen::SparseMatrix<double> pattern(c, c);
    pattern.setFromTriplets(entries.begin(), entries.end(), [](double a, double) { return a; });
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    Eigen::AMDOrdering<int>()(pattern, perm);
    for (Eigen::Index k = 0; k < c; ++k) order.push_back(core[static_cast<std::size_t>(perm.indices()(k))]);
  }
  return order;
}

void TreeSolver::solve(std::span<const double> b, std::span<double> x) const {
  tree_solve(tree_, b, x);
}

WoodburySolver::WoodburySolver(SpanningTree tree, std::vector<Edge> chords)
    : tree_(std::move(tree)), chords_(std::move(chords)) {
  const auto k = static_cast<Eigen::Index>(chords_.size());
  const auto n = static_cast<std::size_t>(tree_.num_vertices());
  Eigen::MatrixXd s(k, k);
  VertexVector rhs(n, 0.0);
  VertexVector col(n);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Edge& e = chords_[static_cast<std::size_t>(j)];
    rhs[e.p] = 1.0;
    rhs[e.q] = -1.0;
    tree_solve(tree_, rhs, col);
    rhs[e.p] = 0.0;
    rhs[e.q] = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const Edge& f = chords_[static_cast<std::size_t>(i)];
      s(i, j) = col[f.p] - col[f.q];
    }
    s(j, j) += 1.0 / e.w;
  }
  capacitance_.compute(s);
  if (capacitance_.info() != Eigen::Success) {
    throw FactorizationError("Woodbury capacitance matrix is not positive definite",
                             chords_.empty() ? -1 : chords_.front().p);
  }
}

void WoodburySolver::solve(std::span<const double> b, std::span<double> x) const {
  tree_solve(tree_, b, x);
  if (chords_.empty()) return;
  const auto k = static_cast<Eigen::Index>(chords_.size());
  Eigen::VectorXd c(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Edge& e = chords_[static_cast<std::size_t>(i)];
    c(i) = x[e.p] - x[e.q];
  }
  const Eigen::VectorXd d = capacitance_.solve(c);
  VertexVector injection(x.size(), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Edge& e = chords_[static_cast<std::size_t>(i)];
    injection[e.p] += d(i);
    injection[e.q] -= d(i);
  }
  VertexVector correction(x.size());
  tree_solve(tree_, injection, correction);
  for (std::size_t v = 0; v < x.size(); ++v) x[v] -= correction[v];
}

CholeskySolver::CholeskySolver(const WeightedGraph& g)
    : n_(g.num_vertices()), singular_(!g.has_self_weights()) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n_) + static_cast<std::size_t>(g.num_edges()));
  if (singular_) grounding_ = 1e-6 * g.mean_weighted_degree();
  for (Vertex v = 0; v < n_; ++v) {
    triplets.emplace_back(v, v, g.diagonal(v) + (v == 0 ? grounding_ : 0.0));
  }
  for (const Edge& e : g.edges()) triplets.emplace_back(e.q, e.p, -e.w);
  Eigen::SparseMatrix<double> lower(n_, n_);
  lower.setFromTriplets(triplets.begin(), triplets.end());

  ldlt_.compute(lower);
  const auto& d = ldlt_.vectorD();
  const auto& inverse = ldlt_.permutationPinv().indices();
  for (Eigen::Index k = 0; k < n_; ++k) {
    if (!(d(k) > 0.0)) {
      const auto vertex = static_cast<Vertex>(inverse(k));
      throw FactorizationError("non-positive pivot at vertex " + std::to_string(vertex), vertex);
    }
  }
  if (ldlt_.info() != Eigen::Success) throw FactorizationError("factorization failed", -1);
}

void CholeskySolver::solve(std::span<const double> b, std::span<double> x) const {
  const auto n = static_cast<std::size_t>(n_);
  if (b.size() != n || x.size() != n) throw DimensionError("solve length mismatch");
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), n_);
  if (singular_) rhs.array() -= rhs.mean();
  // The stages of ldlt_.solve() spelled out: Eigen's final in-place
  // permutation is far slower than an out-of-place one on large vectors.
  Eigen::VectorXd y = ldlt_.permutationP() * rhs;
  ldlt_.matrixL().solveInPlace(y);
  y.array() /= ldlt_.vectorD().array();
  ldlt_.matrixU().solveInPlace(y);
  Eigen::Map<Eigen::VectorXd>(x.data(), n_) = ldlt_.permutationPinv() * y;
  if (singular_) project_out_constant(x);
}

long long CholeskySolver::factor_nonzeros() const {
  return static_cast<long long>(ldlt_.matrixL().nestedExpression().nonZeros()) + n_;
}

std::shared_ptr<const LaplacianSolver> factor_preconditioner(const WeightedGraph& graph,
                                                             const SpanningTree& tree,
                                                             std::span<const Edge> chords) {
  if (graph.num_vertices() != tree.num_vertices()) {
    throw DimensionError("tree and graph sizes differ");
  }
  if (!graph.has_self_weights()) {
    if (chords.empty()) return std::make_shared<TreeSolver>(tree);
    if (chords.size() <= kWoodburyMaxChords) {
      return std::make_shared<WoodburySolver>(tree, std::vector<Edge>(chords.begin(), chords.end()));
    }
  }
  return std::make_shared<CholeskySolver>(graph);
}

}  // namespace specsparse
