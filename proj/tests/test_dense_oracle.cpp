#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "specsparse/dense_oracle.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/sparsifier.hpp"
#include "support.hpp"

using namespace specsparse;
using specsparse::test::relative_gap;
using specsparse::test::unit_triangle;

TEST_CASE("jacobi matches a library symmetric eigensolver") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (const int n : {1, 2, 7, 40, 120}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = normal(rng);
    }
    const auto jac = jacobi_eigen(a, true);
    Eigen::VectorXd got = jac.eigenvalues;
    std::sort(got.data(), got.data() + n);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    for (int i = 0; i < n; ++i) CHECK(std::abs(got(i) - ref.eigenvalues()(i)) <= 1e-10 * a.norm());
    CHECK(jac.off_norm <= 1e-12 * jac.norm);
    const Eigen::MatrixXd& v = jac.eigenvectors;
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-10);
    CHECK((a * v - v * jac.eigenvalues.asDiagonal()).norm() <= 1e-10 * a.norm());
  }
}

TEST_CASE("triangle spectrum and trace") {
  const auto g = unit_triangle();
  const Sparsifier p(g, max_weight_spanning_tree(g));
  const auto spec = dense_generalized_eigs(g, p.graph());
  REQUIRE(spec.eigenvalues.size() == 2);
  CHECK(spec.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dense_trace_ratio(g, p.graph()) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("identical pencil has unit spectrum") {
  const std::vector<Edge> star = {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}};
  const auto g = WeightedGraph::from_edges(4, star);
  for (const double l : dense_generalized_eigs(g, g).eigenvalues) {
    CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto r = generate_random_connected(50, 80, 1);
  for (const double l : dense_generalized_eigs(r, r, false).eigenvalues) {
    CHECK(l == doctest::Approx(1.0).epsilon(1e-10));
  }
  const auto t = generate_random_connected(30, 0, 2);
  CHECK(dense_trace_ratio(t, t) == doctest::Approx(29.0).epsilon(1e-10));
}

TEST_CASE("eigenpairs satisfy the pencil and the P-normalization") {
  const auto g = generate_random_connected(60, 90, 7);
  const Sparsifier p(g, extract_spanning_tree(g));
  const auto spec = dense_generalized_eigs(g, p.graph());
  const auto lg = dense_laplacian(g);
  const auto lp = dense_laplacian(p.graph());
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  REQUIRE(spec.eigenvalues.size() == static_cast<std::size_t>(n - 1));
  for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i) {
    CHECK(spec.eigenvalues[i] <= spec.eigenvalues[i - 1]);
  }
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    const Eigen::Map<const Eigen::VectorXd> u(spec.eigenvectors[i].data(), n);
    const Eigen::VectorXd r = lg * u - spec.eigenvalues[i] * (lp * u);
    CHECK(r.norm() <= 1e-8 * (lg * u).norm());
    CHECK(std::abs(u.sum()) <= 1e-10 * u.norm());
    for (std::size_t j = i; j < std::min(spec.eigenvalues.size(), i + 3); ++j) {
      const Eigen::Map<const Eigen::VectorXd> v(spec.eigenvectors[j].data(), n);
      CHECK(std::abs(u.dot(lp * v) - (i == j ? 1.0 : 0.0)) <= 1e-8);
    }
    CHECK(spec.eigenvalues[i] >= 1.0 - 1e-8);
  }
  double sum = 0.0;
  for (const double l : spec.eigenvalues) sum += l;
  CHECK(relative_gap(sum, dense_trace_ratio(g, p.graph())) <= 1e-8);
}

TEST_CASE("trace equals total stretch on a random graph") {
  const auto g = generate_random_connected(50, 70, 3);
  const auto tree = max_weight_spanning_tree(g);
  const Sparsifier p(g, tree);
  CHECK(relative_gap(dense_trace_ratio(g, p.graph()), total_stretch(g, tree)) <= 1e-8);
}

TEST_CASE("lambda_max is bounded by the total stretch") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_random_connected(150, 200, 60 + seed);
    const auto tree = extract_spanning_tree(g);
    const Sparsifier p(g, tree);
    const auto spec = dense_generalized_eigs(g, p.graph(), false);
    CHECK(spec.eigenvalues.front() <= total_stretch(g, tree) * (1.0 + 1e-10));
    CHECK(spec.eigenvalues.back() >= 1.0 - 1e-8);
  }
}

TEST_CASE("size guard") {
  const auto g = generate_grid(45, 45);
  CHECK_THROWS(dense_generalized_eigs(g, g, false));
  CHECK_THROWS(dense_trace_ratio(g, g));
}
