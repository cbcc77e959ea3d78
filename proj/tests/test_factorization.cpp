#include <algorithm>
#include <random>

#include <doctest.h>

#include "specsparse/factorization.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/sparsifier.hpp"
#include "support.hpp"

using namespace specsparse;
using specsparse::test::unit_triangle;

namespace {

double residual(const WeightedGraph& g, const LaplacianSolver& s, const VertexVector& b) {
  VertexVector pb = b;
  if (s.singular()) project_out_constant(pb);
  const auto x = s.solve(pb);
  const auto lx = laplacian_apply(g, x);
  VertexVector r(pb.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = lx[i] - pb[i];
  return norm2(r) / norm2(pb);
}

VertexVector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  VertexVector v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

}  // namespace

TEST_CASE("cholesky on the triangle is exact") {
  const auto g = unit_triangle();
  const CholeskySolver s(g);
  CHECK(residual(g, s, VertexVector{1.0, 2.0, -3.0}) <= 1e-12);
}

TEST_CASE("pure tree: every solver matches tree_solve") {
  const auto g = generate_random_connected(400, 0, 21);
  const auto tree = extract_spanning_tree(g);
  const auto b = random_vector(400, 1);
  const auto ref = tree_solve(tree, b);
  const CholeskySolver chol(g);
  const auto x = chol.solve([&] {
    auto pb = b;
    project_out_constant(pb);
    return pb;
  }());
  for (std::size_t i = 0; i < 400; ++i) CHECK(std::abs(x[i] - ref[i]) <= 1e-12 * norm2(ref));
  // A tree factors with no fill at all.
  CHECK(chol.factor_nonzeros() == 399 + 400);
  const auto picked = factor_preconditioner(g, tree, {});
  const auto y = picked->solve(b);
  for (std::size_t i = 0; i < 400; ++i) CHECK(std::abs(y[i] - ref[i]) <= 1e-12 * norm2(ref));
}

TEST_CASE("woodbury and cholesky agree across the crossover") {
  const auto g = generate_grid(20, 20, Weighting::uniform_random(6));
  const auto tree = extract_spanning_tree(g);
  std::vector<EdgeId> off;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!tree.contains_edge(e)) off.push_back(e);
  }
  for (const std::size_t k : {std::size_t{1}, std::size_t{64}, std::size_t{65}}) {
    const Sparsifier s(g, tree, std::vector<EdgeId>(off.begin(), off.begin() + k));
    const CholeskySolver direct(s.graph());
    const auto b = random_vector(400, k);
    CHECK(residual(s.graph(), s.solver(), b) <= 1e-10);
    auto pb = b;
    project_out_constant(pb);
    const auto x = s.solver().solve(pb);
    const auto y = direct.solve(pb);
    for (std::size_t i = 0; i < 400; ++i) CHECK(std::abs(x[i] - y[i]) <= 1e-9 * norm2(y));
  }
}

TEST_CASE("cholesky residual on meshes and random graphs") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto g = generate_random_connected(2000, 3000, seed);
    const CholeskySolver s(g);
    CHECK(residual(g, s, random_vector(2000, seed)) <= 1e-10);
  }
  const auto mesh = generate_grid(50, 50);
  CHECK(residual(mesh, CholeskySolver(mesh), random_vector(2500, 9)) <= 1e-10);
}

TEST_CASE("self weights make the system nonsingular") {
  const std::vector<Edge> edges = {{0, 1, 1.0}, {1, 2, 2.0}};
  const auto g = WeightedGraph::from_edges(3, edges, {0.5, 0.0, 0.25});
  const CholeskySolver s(g);
  CHECK_FALSE(s.singular());
  CHECK(s.grounding() == 0.0);
  const VertexVector b = {1.0, 1.0, 1.0};
  const auto x = s.solve(b);
  const auto lx = laplacian_apply(g, x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(lx[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mesh sparsifier with 5% chords keeps fill small") {
  const auto g = generate_grid(100, 100);
  const auto tree = extract_spanning_tree(g);
  std::vector<EdgeId> off;
  for (EdgeId e = 0; e < g.num_edges() && off.size() < 500; ++e) {
    if (!tree.contains_edge(e)) off.push_back(e);
  }
  const Sparsifier s(g, tree, off);
  const CholeskySolver chol(s.graph());
  // Strictly lower nonzeros of the factor against the edge count of L_P.
  const long long strict = chol.factor_nonzeros() - s.num_vertices();
  CHECK(strict <= 10LL * s.num_edges());
  CHECK(residual(s.graph(), chol, random_vector(10000, 2)) <= 1e-10);
}

TEST_CASE("low-degree ordering eliminates leaves first") {
  // Star on 5 vertices: center 0. Three leaves go first; after that the
  // center and the last leaf both have degree 1.
  const int outer[] = {0, 4, 5, 6, 7, 8};
  const int inner[] = {1, 2, 3, 4, 0, 0, 0, 0};
  const auto order = low_degree_elimination_order(5, outer, inner);
  REQUIRE(order.size() == 5);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 5; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
  for (std::size_t i = 0; i < 3; ++i) CHECK(order[i] != 0);
}
