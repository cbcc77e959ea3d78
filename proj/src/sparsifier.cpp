#include "specsparse/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "specsparse/embedding.hpp"
#include "specsparse/random.hpp"
#include "specsparse/similarity.hpp"

namespace specsparse {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kNotRun:
      return "not_run";
    case StopReason::kTargetReached:
      return "target_reached";
    case StopReason::kMaxRounds:
      return "max_rounds";
    case StopReason::kBudgetExhausted:
      return "budget_exhausted";
    case StopReason::kNoCandidates:
      return "no_candidates";
  }
  return "unknown";
}

Sparsifier::Sparsifier(const WeightedGraph& g, SpanningTree tree, std::vector<EdgeId> recovered)
    : tree_(std::move(tree)), recovered_(std::move(recovered)) {
  if (tree_.num_vertices() != g.num_vertices()) throw DimensionError("tree and graph differ in size");
  const auto m = static_cast<std::size_t>(g.num_edges());
  in_p_.assign(m, 0);
  std::vector<EdgeId> members(tree_.edges().begin(), tree_.edges().end());
  for (const EdgeId e : members) in_p_[static_cast<std::size_t>(e)] = 1;
  std::vector<Edge> chords;
  chords.reserve(recovered_.size());
  for (const EdgeId e : recovered_) {
    if (e < 0 || static_cast<std::size_t>(e) >= m) throw GraphError("recovered edge id out of range");
    if (in_p_[static_cast<std::size_t>(e)]) throw GraphError("recovered edge already in the sparsifier");
    in_p_[static_cast<std::size_t>(e)] = 1;
    members.push_back(e);
    chords.push_back(g.edge(e));
  }
  recovered_round_.assign(recovered_.size(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!in_p_[static_cast<std::size_t>(e)]) offtree_.push_back(e);
  }
  graph_ = edge_subgraph(g, members);
  solver_ = factor_preconditioner(graph_, tree_, chords);
}

double Sparsifier::density() const {
  return static_cast<double>(num_edges()) / static_cast<double>(num_vertices());
}

Sparsifier Sparsifier::with_edges(const WeightedGraph& g, std::span<const EdgeId> more,
                                  int round) const {
  std::vector<EdgeId> all = recovered_;
  all.insert(all.end(), more.begin(), more.end());
  Sparsifier next(g, tree_, std::move(all));
  std::copy(recovered_round_.begin(), recovered_round_.end(), next.recovered_round_.begin());
  std::fill(next.recovered_round_.begin() + static_cast<std::ptrdiff_t>(recovered_.size()),
            next.recovered_round_.end(), round);
  next.history = history;
  next.converged = converged;
  next.stop_reason = stop_reason;
  return next;
}

std::vector<EdgeId> filter_edges(const HeatReport& report, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) throw Error("heat threshold must lie in (0, 1]");
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < report.edges.size(); ++k) {
    if (report.raw_heat[k] > 0.0 && report.normalized_heat[k] >= threshold) keep.push_back(k);
  }
  std::stable_sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
    if (report.raw_heat[a] != report.raw_heat[b]) return report.raw_heat[a] > report.raw_heat[b];
    return report.edges[a] < report.edges[b];
  });
  std::vector<EdgeId> out;
  out.reserve(keep.size());
  for (const auto k : keep) out.push_back(report.edges[k]);
  return out;
}

std::vector<EdgeId> deduplicate_similar(const WeightedGraph& g, std::span<const EdgeId> candidates,
                                        const SpanningTree& tree, std::size_t limit) {
  std::vector<char> claimed(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<EdgeId> accepted;
  for (const EdgeId e : candidates) {
    if (accepted.size() >= limit) break;
    const Edge& edge = g.edge(e);
    const EdgeId b = bottleneck_edge(tree, edge.p, edge.q);
    if (b < 0 || claimed[static_cast<std::size_t>(b)]) continue;
    claimed[static_cast<std::size_t>(b)] = 1;
    accepted.push_back(e);
  }
  return accepted;
}

Sparsifier densify(const WeightedGraph& g, SpanningTree tree, double target_sigma2,
                   const DensifyConfig& config) {
  if (target_sigma2 < 1.0) throw Error("target sigma^2 must be at least 1");
  if (config.t < 1) throw Error("densify needs t >= 1");
  const Vertex n = g.num_vertices();
  const auto per_round = static_cast<std::size_t>(
      std::max(1.0, std::floor(config.max_edges_per_round_fraction * static_cast<double>(n))));

  Sparsifier s(g, std::move(tree));
  VertexVector warm;
  for (int round = 0;; ++round) {
    // Each round starts from the previous round's dominant direction.
    // Mixed with a fresh random vector so directions the new edges opened
    // up are present in the start.
    if (!warm.empty()) {
      auto rng = make_rng(config.seed, Stream::kLambdaMax, static_cast<std::uint64_t>(round));
      const auto fresh = rademacher_vector(warm.size(), rng);
      const double a = 1.0 / norm2(warm);
      const double b = 1.0 / norm2(fresh);
      for (std::size_t i = 0; i < warm.size(); ++i) warm[i] = a * warm[i] + b * fresh[i];
    }
    auto est = estimate_similarity(g, s.graph(), s.solver(), config.lambda_max_iters,
                                   config.lambda_rel_tol, config.seed, warm);
    warm = std::move(est.vector);
    RoundRecord rec;
    rec.round = round + 1;
    rec.lambda_max = est.lambda_max;
    rec.lambda_min = est.lambda_min;
    rec.sigma2 = est.sigma2;
    rec.lambda_iterations = est.iterations;
    if (est.sigma2 <= target_sigma2) {
      s.history.push_back(rec);
      s.converged = true;
      s.stop_reason = StopReason::kTargetReached;
      return s;
    }
    std::size_t room = per_round;
    if (config.edge_budget >= 0) {
      const auto used = static_cast<long long>(s.recovered_edges().size());
      room = std::min<std::size_t>(room, static_cast<std::size_t>(std::max(0LL, config.edge_budget - used)));
    }
    if (round >= config.max_rounds || room == 0 || s.offtree_edges().empty()) {
      s.history.push_back(rec);
      s.stop_reason = round >= config.max_rounds ? StopReason::kMaxRounds
                      : room == 0                 ? StopReason::kBudgetExhausted
                                                  : StopReason::kNoCandidates;
      return s;
    }

    HeatConfig hc;
    hc.t = config.t;
    hc.r = config.r;
    hc.seed = derive_seed(config.seed, static_cast<std::uint64_t>(Stream::kHeat),
                          static_cast<std::uint64_t>(round));
    hc.threads = config.threads;
    const auto heat = aggregate_heat(g, s, hc);
    rec.heat_total = heat.heat_total;
    rec.quadratic_gap = heat.quadratic_gap;
    rec.threshold = heat_threshold(target_sigma2, est.lambda_min, est.lambda_max, config.t);
    const auto candidates = filter_edges(heat, rec.threshold);
    const auto accepted = deduplicate_similar(g, candidates, s.tree(), room);
    rec.candidates = static_cast<int>(candidates.size());
    rec.accepted = static_cast<int>(accepted.size());
    rec.edges_added = rec.accepted;
    s.history.push_back(rec);
    if (accepted.empty()) {
      s.stop_reason = StopReason::kNoCandidates;
      return s;
    }
    s = s.with_edges(g, accepted, round + 1);
  }
}

double rank_one_gamma(std::span<const double> u, const Edge& edge) {
  return u[static_cast<std::size_t>(edge.p)] - u[static_cast<std::size_t>(edge.q)];
}

double predicted_eigenvalue_after_add(double lambda, double w, double gamma) {
  if (!(w > 0.0)) throw Error("edge weight must be positive");
  return lambda / (1.0 + w * gamma * gamma);
}

double weight_for_target(double lambda, double lambda_target, double gamma) {
  if (gamma == 0.0) throw Error("edge does not couple to this eigenvector (gamma = 0)");
  if (lambda_target > lambda || lambda_target <= 0.0) throw Error("target must lie in (0, lambda]");
  return (lambda - lambda_target) / (lambda_target * gamma * gamma);
}

void write_sparsifier_edges(std::ostream& out, const WeightedGraph& g, const Sparsifier& s) {
  const auto old_precision = out.precision(17);
  out << "kind\tp\tq\tw\tround\n";
  for (const EdgeId e : s.tree().edges()) {
    const Edge& edge = g.edge(e);
    out << "tree\t" << edge.p << '\t' << edge.q << '\t' << edge.w << "\t0\n";
  }
  const auto rec = s.recovered_edges();
  const auto rounds = s.recovered_rounds();
  for (std::size_t k = 0; k < rec.size(); ++k) {
    const Edge& edge = g.edge(rec[k]);
    out << "recovered\t" << edge.p << '\t' << edge.q << '\t' << edge.w << '\t' << rounds[k] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace specsparse
