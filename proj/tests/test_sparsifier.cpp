#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <doctest.h>

#include "specsparse/dense_oracle.hpp"
#include "specsparse/embedding.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/similarity.hpp"
#include "specsparse/sparsifier.hpp"
#include "support.hpp"

using namespace specsparse;
using specsparse::test::checked_heat;
using specsparse::test::relative_gap;
using specsparse::test::unit_triangle;

namespace {

void check_history(const Sparsifier& s, bool monotone = true) {
  for (std::size_t k = 1; monotone && k < s.history.size(); ++k) {
    CHECK(s.history[k].sigma2 <= s.history[k - 1].sigma2 * (1.0 + 1e-12));
  }
  for (const auto& rec : s.history) {
    CHECK(rec.lambda_min >= 1.0);
    CHECK(rec.sigma2 == doctest::Approx(rec.lambda_max / rec.lambda_min).epsilon(1e-14));
    CHECK(relative_gap(rec.heat_total, rec.quadratic_gap) <= 1e-10);
  }
}

}  // namespace

TEST_CASE("filter keeps edges at or above the threshold in rank order") {
  HeatReport r;
  r.edges = {1, 4, 6, 7};
  r.raw_heat = {8.0, 2.0, 0.0, 4.0};
  r.normalized_heat = {1.0, 0.25, 0.0, 0.5};
  CHECK(filter_edges(r, 0.5) == std::vector<EdgeId>{1, 7});
  CHECK(filter_edges(r, 0.2) == std::vector<EdgeId>{1, 7, 4});
  // Zero-heat edges never pass, even at the smallest threshold.
  CHECK(filter_edges(r, 1e-300) == std::vector<EdgeId>{1, 7, 4});
  CHECK(filter_edges(r, 1.0) == std::vector<EdgeId>{1});
  CHECK_THROWS(filter_edges(r, 0.0));
  CHECK_THROWS(filter_edges(r, 1.5));
}

TEST_CASE("dedup: parallel paths share a bottleneck") {
  // Path 0-1-2-3 plus two chords over the same tree path: (0,3) twice via
  // weight-distinct multi-hop chords (0,3) and (0,2) with (1,3).
  const std::vector<Edge> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}, {0, 2, 1.0}};
  const auto g = WeightedGraph::from_edges(4, edges);
  const std::vector<EdgeId> tree_ids = {0, 1, 2};
  const auto tree = SpanningTree::from_edges(g, tree_ids);
  // Both chords have tree edge 0 as their bottleneck (unit weights, lowest id).
  CHECK(deduplicate_similar(g, std::vector<EdgeId>{3, 4}, tree) == std::vector<EdgeId>{3});
  CHECK(deduplicate_similar(g, std::vector<EdgeId>{4, 3}, tree) == std::vector<EdgeId>{4});
}

TEST_CASE("dedup: disjoint tree paths are all accepted") {
  const auto g = generate_grid(2, 6);
  const auto comb = hair_comb_tree(g, 2, 6);
  std::vector<EdgeId> top;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!comb.contains_edge(e)) top.push_back(e);
  }
  // Top-row chords: each closes a 4-cycle on its own column pair, but
  // neighbouring cycles share a tooth, so only every other chord is disjoint.
  std::vector<EdgeId> disjoint = {top[0], top[2], top[4]};
  CHECK(deduplicate_similar(g, disjoint, comb) == disjoint);
  CHECK(deduplicate_similar(g, disjoint, comb, 2).size() == 2);
}

TEST_CASE("dedup spreads hair-comb picks over distinct teeth") {
  const int k = 200;
  const auto g = generate_grid(k, k);
  const auto comb = hair_comb_tree(g, k, k);
  const Sparsifier p(g, comb);
  const auto heat = checked_heat(g, p, HeatConfig{});
  const auto ranked = rank_edges(heat);
  // Every chord's tree path crosses exactly one spine edge, so there are
  // k - 1 distinct bottlenecks to spread over.
  const auto accepted = deduplicate_similar(g, ranked, comb, 400);
  REQUIRE(accepted.size() == static_cast<std::size_t>(k - 1));
  std::set<EdgeId> bottlenecks;
  std::set<int> columns;
  for (const EdgeId e : accepted) {
    const auto& edge = g.edge(e);
    bottlenecks.insert(bottleneck_edge(comb, edge.p, edge.q));
    columns.insert(edge.p % k);
  }
  CHECK(bottlenecks.size() == accepted.size());
  CHECK(columns.size() >= 100);
}

TEST_CASE("densify: a sparsifier already within target runs zero rounds") {
  const auto g = generate_random_connected(30, 0, 4);
  const auto s = densify(g, extract_spanning_tree(g), 1.0);
  CHECK(s.converged);
  CHECK(s.stop_reason == StopReason::kTargetReached);
  CHECK(s.recovered_edges().empty());
  REQUIRE(s.history.size() == 1);
  CHECK(s.history[0].sigma2 == doctest::Approx(1.0));
}

TEST_CASE("densify: triangle recovers its off-tree edge") {
  const auto g = unit_triangle();
  const auto s = densify(g, max_weight_spanning_tree(g), 1.05);
  CHECK(s.converged);
  CHECK(s.recovered_edges().size() == 1);
  const auto spectrum = dense_generalized_eigs(g, s.graph(), false);
  for (const double l : spectrum.eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  check_history(s);
}

TEST_CASE("densify: hair-comb mesh with a 400-edge budget") {
  const int k = 200;
  const auto g = generate_grid(k, k);
  DensifyConfig cfg;
  cfg.edge_budget = 400;
  const auto s = densify(g, hair_comb_tree(g, k, k), 1.0, cfg);
  CHECK(s.recovered_edges().size() == 400);
  CHECK(s.stop_reason == StopReason::kBudgetExhausted);
  const double before = s.history.front().lambda_max;
  const double after = s.history.back().lambda_max;
  // Two rounds place one chord per tooth pair each, at the tips and then
  // near mid-height, which caps the drop well short of 100x (see the
  // acceptance run). The tail estimate is not converged enough to be
  // monotone here.
  CHECK(before / after >= 10.0);
  check_history(s, false);
}

TEST_CASE("densify: history, round tags and edge bound") {
  const auto g = generate_grid(60, 60, Weighting::uniform_random(8));
  DensifyConfig cfg;
  cfg.max_rounds = 6;
  const auto s = densify(g, extract_spanning_tree(g), 20.0, cfg);
  check_history(s);
  const auto cap = static_cast<std::size_t>(std::floor(0.02 * 3600));
  CHECK(s.recovered_edges().size() <= static_cast<std::size_t>(cfg.max_rounds) * cap);
  REQUIRE(s.recovered_rounds().size() == s.recovered_edges().size());
  std::size_t added = 0;
  for (const auto& rec : s.history) {
    CHECK(static_cast<std::size_t>(rec.edges_added) <= cap);
    const auto tagged = std::count(s.recovered_rounds().begin(), s.recovered_rounds().end(), rec.round);
    CHECK(static_cast<std::size_t>(tagged) == static_cast<std::size_t>(rec.edges_added));
    added += static_cast<std::size_t>(rec.edges_added);
  }
  CHECK(added == s.recovered_edges().size());
  if (!s.converged) CHECK(s.stop_reason != StopReason::kTargetReached);
}

TEST_CASE("densify is deterministic") {
  const auto g = generate_grid(40, 40, Weighting::uniform_random(2));
  const auto tree = extract_spanning_tree(g);
  const auto a = densify(g, tree, 10.0);
  const auto b = densify(g, tree, 10.0);
  CHECK(std::equal(a.recovered_edges().begin(), a.recovered_edges().end(),
                   b.recovered_edges().begin(), b.recovered_edges().end()));
  CHECK(a.history.back().sigma2 == b.history.back().sigma2);
}

TEST_CASE("densify rejects bad targets") {
  const auto g = unit_triangle();
  CHECK_THROWS(densify(g, max_weight_spanning_tree(g), 0.5));
  DensifyConfig cfg;
  cfg.t = 0;
  CHECK_THROWS(densify(g, max_weight_spanning_tree(g), 2.0, cfg));
}

TEST_CASE("rank-one quantities on the triangle") {
  const double s = 1.0 / std::sqrt(2.0);
  const VertexVector u = {s, 0.0, -s};
  const double gamma = rank_one_gamma(u, Edge{0, 2, 1.0});
  CHECK(gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rank_one_gamma(VertexVector{0.5, 0.5, -1.0}, Edge{0, 1, 1.0}) == 0.0);
  CHECK(predicted_eigenvalue_after_add(3.0, 1.0, gamma) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(weight_for_target(3.0, 1.0, gamma) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(weight_for_target(3.0, 3.0, gamma) == 0.0);
  CHECK(predicted_eigenvalue_after_add(7.0, 2.0, 0.0) == 7.0);
  CHECK_THROWS(weight_for_target(3.0, 1.0, 0.0));
  CHECK_THROWS(predicted_eigenvalue_after_add(3.0, 0.0, 1.0));
}

TEST_CASE("rank-one prediction decreases toward zero in w") {
  double last = 10.0;
  for (double w = 0.1; w < 1e10; w *= 10.0) {
    const double v = predicted_eigenvalue_after_add(10.0, w, 0.7);
    CHECK(v < last);
    CHECK(v > 0.0);
    last = v;
  }
  CHECK(last < 1e-6);
}

TEST_CASE("weight_for_target inverts the prediction") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double lambda = 1.0 + 100.0 * unif(rng);
    const double target = 1.0 + (lambda - 1.0) * unif(rng);
    const double gamma = 0.1 + 3.0 * unif(rng);
    const double w = weight_for_target(lambda, target, gamma);
    if (w == 0.0) continue;
    CHECK(relative_gap(predicted_eigenvalue_after_add(lambda, w, gamma), target) <= 1e-12);
  }
}

TEST_CASE("adding an off-tree edge never raises a generalized eigenvalue") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_random_connected(60, 50, 40 + seed);
    Sparsifier p(g, extract_spanning_tree(g));
    auto before = dense_generalized_eigs(g, p.graph(), false).eigenvalues;
    const std::vector<EdgeId> off(p.offtree_edges().begin(), p.offtree_edges().end());
    for (std::size_t k = 0; k < 8; ++k) {
      p = p.with_edges(g, std::vector<EdgeId>{off[(k * 7 + seed) % off.size()]});
      const auto after = dense_generalized_eigs(g, p.graph(), false).eigenvalues;
      for (std::size_t i = 0; i < after.size(); ++i) CHECK(after[i] <= before[i] + 1e-8);
      before = after;
    }
  }
}

TEST_CASE("sidecar edge file lists tree and recovered edges") {
  const auto g = generate_grid(10, 10, Weighting::uniform_random(3));
  DensifyConfig cfg;
  cfg.max_rounds = 3;
  const auto s = densify(g, extract_spanning_tree(g), 2.0, cfg);
  std::ostringstream out;
  write_sparsifier_edges(out, g, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "kind\tp\tq\tw\tround");
  int tree_rows = 0, recovered_rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("tree\t", 0) == 0) ++tree_rows;
    if (line.rfind("recovered\t", 0) == 0) ++recovered_rows;
  }
  CHECK(tree_rows == 99);
  CHECK(recovered_rows == static_cast<int>(s.recovered_edges().size()));
}

TEST_CASE("sparsifier bookkeeping") {
  const auto g = unit_triangle();
  const Sparsifier s(g, max_weight_spanning_tree(g));
  CHECK(s.num_vertices() == 3);
  CHECK(s.num_edges() == 2);
  CHECK(s.offtree_edges().size() == 1);
  CHECK(s.contains_edge(0));
  CHECK_FALSE(s.contains_edge(2));
  CHECK(s.density() == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(Sparsifier(g, max_weight_spanning_tree(g), {0}), GraphError);
  CHECK_THROWS_AS(Sparsifier(g, max_weight_spanning_tree(g), {7}), GraphError);
}
