#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "specsparse/dense_oracle.hpp"
#include "specsparse/embedding.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/matrix_market.hpp"
#include "specsparse/partition.hpp"
#include "specsparse/pcg.hpp"
#include "specsparse/random.hpp"
#include "specsparse/similarity.hpp"
#include "specsparse/sparsifier.hpp"

namespace specsparse::cli {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double lap() {
    const double s = seconds();
    start_ = std::chrono::steady_clock::now();
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct LoadedGraph {
  WeightedGraph graph;
  int rows = 0;
  int cols = 0;
  json info = json::object();
};

std::pair<int, int> parse_grid(const std::string& spec) {
  const auto x = spec.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--grid expects RxC, got '" + spec + "'");
  try {
    std::size_t used_r = 0;
    std::size_t used_c = 0;
    const int rows = std::stoi(spec.substr(0, x), &used_r);
    const int cols = std::stoi(spec.substr(x + 1), &used_c);
    if (used_r != x || used_c != spec.size() - x - 1) throw std::invalid_argument(spec);
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects RxC, got '" + spec + "'");
  }
}

LoadedGraph load_graph(const RunConfig& cfg) {
  const int sources = !cfg.input.empty() + !cfg.grid.empty() + (cfg.random_n > 0) + cfg.triangle;
  if (sources != 1) throw UsageError("give exactly one of --input, --grid, --random, --triangle");
  LoadedGraph out;
  try {
    if (!cfg.input.empty()) {
      if (!std::filesystem::exists(cfg.input)) throw UsageError("no such file: " + cfg.input);
      auto mm = read_matrix_market(cfg.input);
      out.graph = std::move(mm.graph);
      out.info["dropped_positive"] = mm.dropped_positive;
      out.info["non_sdd_rows"] = mm.non_sdd_rows;
    } else if (!cfg.grid.empty()) {
      const auto [rows, cols] = parse_grid(cfg.grid);
      Weighting w;
      if (cfg.weights == "unit") {
        w = Weighting::unit();
      } else if (cfg.weights == "random") {
        w = Weighting::uniform_random(derive_seed(cfg.seed, static_cast<std::uint64_t>(Stream::kGraph)));
      } else {
        throw UsageError("--weights must be unit or random");
      }
      out.graph = generate_grid(rows, cols, w);
      out.rows = rows;
      out.cols = cols;
    } else if (cfg.random_n > 0) {
      const EdgeId extra = cfg.random_extra >= 0 ? cfg.random_extra : cfg.random_n / 2;
      out.graph = generate_random_connected(
          cfg.random_n, extra, derive_seed(cfg.seed, static_cast<std::uint64_t>(Stream::kGraph)));
    } else {
      const Edge edges[] = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
      out.graph = WeightedGraph::from_edges(3, edges);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return out;
}

SpanningTree build_tree(const RunConfig& cfg, const LoadedGraph& lg) {
  if (cfg.tree == "max-weight") return max_weight_spanning_tree(lg.graph);
  if (cfg.tree == "low-stretch") {
    return low_stretch_spanning_tree(lg.graph, derive_seed(cfg.seed, static_cast<std::uint64_t>(Stream::kTree)));
  }
  if (cfg.tree == "hair-comb") {
    if (lg.rows == 0) throw UsageError("--tree hair-comb needs --grid");
    return hair_comb_tree(lg.graph, lg.rows, lg.cols);
  }
  throw UsageError("--tree must be max-weight, low-stretch or hair-comb");
}

DensifyConfig densify_config(const RunConfig& cfg) {
  DensifyConfig dc;
  dc.t = cfg.t;
  dc.r = cfg.r;
  dc.seed = cfg.seed;
  dc.max_rounds = cfg.max_rounds;
  dc.max_edges_per_round_fraction = cfg.round_fraction;
  dc.edge_budget = cfg.budget;
  dc.threads = cfg.threads;
  return dc;
}

json history_json(const Sparsifier& s) {
  json rounds = json::array();
  for (const auto& r : s.history) {
    rounds.push_back({{"round", r.round},
                      {"lambda_max_est", r.lambda_max},
                      {"lambda_min_est", r.lambda_min},
                      {"sigma2_est", r.sigma2},
                      {"lambda_iterations", r.lambda_iterations},
                      {"threshold", r.threshold},
                      {"candidates", r.candidates},
                      {"edges_added", r.edges_added},
                      {"heat_total", r.heat_total},
                      {"quadratic_gap", r.quadratic_gap}});
  }
  return rounds;
}

json sparsifier_summary(const Sparsifier& s) {
  const auto& last = s.history.back();
  json added = json::array();
  for (const auto& r : s.history) {
    if (r.edges_added > 0) added.push_back(r.edges_added);
  }
  return {{"rounds", static_cast<int>(added.size())},
          {"edges_added_per_round", added},
          {"recovered_edges", s.recovered_edges().size()},
          {"lambda_max_est", last.lambda_max},
          {"lambda_min_est", last.lambda_min},
          {"sigma2_est", last.sigma2},
          {"initial_lambda_max_est", s.history.front().lambda_max},
          {"lambda_max_reduction", s.history.front().lambda_max / last.lambda_max},
          {"density", s.density()},
          {"converged", s.converged},
          {"stop_reason", to_string(s.stop_reason)}};
}

json base_report(const RunConfig& cfg, const LoadedGraph& lg) {
  json report;
  report["format_version"] = kFormatVersion;
  report["config"] = to_json(cfg);
  report["n"] = lg.graph.num_vertices();
  report["m"] = lg.graph.num_edges();
  report["has_self_weights"] = lg.graph.has_self_weights();
  if (!lg.info.empty()) report["input"] = lg.info;
  return report;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

// A sparsify stop that was asked for (target or edge budget) is a success.
int sparsify_exit_code(const Sparsifier& s) {
  return s.converged || s.stop_reason == StopReason::kBudgetExhausted ? 0 : 1;
}

VertexVector load_rhs(const RunConfig& cfg, Vertex n) {
  VertexVector b;
  if (!cfg.rhs.empty()) {
    std::ifstream in(cfg.rhs);
    if (!in) throw UsageError("no such file: " + cfg.rhs);
    double v = 0.0;
    while (in >> v) b.push_back(v);
    if (!in.eof()) throw UsageError("malformed right-hand side in " + cfg.rhs);
    if (b.size() != static_cast<std::size_t>(n)) {
      throw UsageError("right-hand side has " + std::to_string(b.size()) + " entries, expected " +
                       std::to_string(n));
    }
    return b;
  }
  auto rng = make_rng(cfg.random_rhs.value_or(cfg.seed), Stream::kRhs);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  b.resize(static_cast<std::size_t>(n));
  for (auto& x : b) x = u(rng);
  return b;
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json j;
  j["subcommand"] = cfg.subcommand;
  j["input"] = cfg.input;
  j["grid"] = cfg.grid;
  j["random"] = cfg.random_n;
  j["random_extra"] = cfg.random_extra;
  j["triangle"] = cfg.triangle;
  j["weights"] = cfg.weights;
  j["tree"] = cfg.tree;
  j["sigma2"] = cfg.sigma2;
  j["t"] = cfg.t;
  j["r"] = cfg.r;
  j["seed"] = cfg.seed;
  j["max_rounds"] = cfg.max_rounds;
  j["round_fraction"] = cfg.round_fraction;
  j["budget"] = cfg.budget;
  j["threads"] = cfg.threads;
  j["tol"] = cfg.tol;
  j["max_iters"] = cfg.max_iters;
  j["rhs"] = cfg.rhs;
  j["random_rhs"] = cfg.random_rhs ? json(*cfg.random_rhs) : json(nullptr);
  j["fiedler_iters"] = cfg.fiedler_iters;
  j["compare_direct"] = cfg.compare_direct;
  j["corrupt_weight"] = cfg.corrupt_weight;
  j["oracle_edges"] = cfg.oracle_edges;
  j["output_prefix"] = cfg.output_prefix;
  return j;
}

CommandResult cmd_sparsify(const RunConfig& cfg) {
  Stopwatch clock;
  const auto lg = load_graph(cfg);
  const double t_load = clock.lap();
  auto tree = build_tree(cfg, lg);
  const double stretch = total_stretch(lg.graph, tree);
  const double t_tree = clock.lap();
  const auto s = densify(lg.graph, std::move(tree), cfg.sigma2, densify_config(cfg));
  const double t_densify = clock.lap();

  CommandResult result;
  result.report = base_report(cfg, lg);
  result.report["tree_total_stretch"] = stretch;
  result.report.update(sparsifier_summary(s));
  result.report["history"] = history_json(s);
  if (!cfg.output_prefix.empty()) {
    write_matrix_market(cfg.output_prefix + ".mtx", s.graph());
    auto edges = open_output(cfg.output_prefix + ".edges.tsv");
    write_sparsifier_edges(edges, lg.graph, s);
  }
  result.report["wall_times"] = {{"load", t_load},
                                 {"tree", t_tree},
                                 {"densify", t_densify},
                                 {"total", t_load + t_tree + t_densify + clock.lap()}};
  result.exit_code = sparsify_exit_code(s);
  return result;
}

CommandResult cmd_solve(const RunConfig& cfg) {
  Stopwatch clock;
  const auto lg = load_graph(cfg);
  const auto b = load_rhs(cfg, lg.graph.num_vertices());
  const double t_load = clock.lap();
  const auto s = densify(lg.graph, build_tree(cfg, lg), cfg.sigma2, densify_config(cfg));
  const double t_sparsify = clock.lap();
  const auto sol = pcg_solve(lg.graph, s.solver(), b, cfg.tol, cfg.max_iters);
  const double t_solve = clock.lap();

  CommandResult result;
  result.report = base_report(cfg, lg);
  result.report["iterations"] = sol.iterations;
  result.report["relative_residual"] = sol.relative_residual;
  result.report["converged"] = sol.converged;
  result.report["removed_mean"] = sol.removed_mean;
  result.report["residual_history"] = sol.residual_history;
  result.report["sparsifier_density"] = s.density();
  result.report["sigma2_est"] = s.history.back().sigma2;
  result.report["sparsifier_stop_reason"] = to_string(s.stop_reason);
  if (!cfg.output_prefix.empty()) {
    auto out = open_output(cfg.output_prefix + ".solution.txt");
    out.precision(17);
    for (const double x : sol.x) out << x << '\n';
  }
  result.report["timings"] = {{"load", t_load}, {"sparsify", t_sparsify}, {"solve", t_solve}};
  result.exit_code = sol.converged ? 0 : 1;
  return result;
}

CommandResult cmd_partition(const RunConfig& cfg) {
  Stopwatch clock;
  const auto lg = load_graph(cfg);
  const double t_load = clock.lap();
  const auto s = densify(lg.graph, build_tree(cfg, lg), cfg.sigma2, densify_config(cfg));
  const double t_sparsify = clock.lap();
  FiedlerOptions fo;
  fo.iters = cfg.fiedler_iters;
  fo.seed = cfg.seed;
  const auto fiedler = fiedler_approx(lg.graph, s.solver(), fo);
  const auto cut = sign_cut(lg.graph, fiedler.vector);
  const double t_fiedler = clock.lap();

  CommandResult result;
  result.report = base_report(cfg, lg);
  result.report["sparsifier_density"] = s.density();
  result.report["sigma2_est"] = s.history.back().sigma2;
  result.report["balance_ratio"] = cut.balance_ratio;
  result.report["cut_weight"] = cut.cut_weight;
  result.report["positive"] = cut.positive;
  result.report["negative"] = cut.negative;
  result.report["rayleigh_history"] = fiedler.rayleigh_history;
  result.report["inner_iterations"] = fiedler.inner_iterations;
  json timings = {{"load", t_load}, {"sparsify", t_sparsify}, {"fiedler", t_fiedler}};
  if (cfg.compare_direct) {
    const CholeskySolver direct(lg.graph);
    const auto exact = fiedler_approx(lg.graph, direct, fo);
    const auto exact_cut = sign_cut(lg.graph, exact.vector);
    result.report["disagreement_vs_direct"] = partition_disagreement(cut, exact_cut);
    timings["direct"] = clock.lap();
  }
  if (!cfg.output_prefix.empty()) {
    auto out = open_output(cfg.output_prefix + ".signs.txt");
    for (const int v : cut.signs) out << v << '\n';
  }
  result.report["timings"] = timings;
  return result;
}

CommandResult cmd_stats(const RunConfig& cfg) {
  Stopwatch clock;
  const auto lg = load_graph(cfg);
  const auto& g = lg.graph;
  const Sparsifier s(g, build_tree(cfg, lg));
  HeatConfig hc;
  hc.t = cfg.t;
  hc.r = cfg.r;
  hc.seed = cfg.seed;
  hc.threads = cfg.threads;
  const auto heat = aggregate_heat(g, s, hc);

  CommandResult result;
  result.report = base_report(cfg, lg);
  result.report["tree_total_stretch"] = total_stretch(g, s.tree());
  result.report["offtree_edges"] = s.offtree_edges().size();
  result.report["heat_total"] = heat.heat_total;
  result.report["quadratic_gap"] = heat.quadratic_gap;
  result.report["vectors"] = heat.r;

  // Off-tree stretch histogram in powers of two.
  std::vector<long long> bins;
  for (const EdgeId e : s.offtree_edges()) {
    const Edge& edge = g.edge(e);
    const double st = edge_stretch(s.tree(), edge.p, edge.q, edge.w);
    const auto k = static_cast<std::size_t>(std::max(0, static_cast<int>(std::floor(std::log2(std::max(st, 1.0))))));
    if (bins.size() <= k) bins.resize(k + 1, 0);
    ++bins[k];
  }
  json hist = json::array();
  for (std::size_t k = 0; k < bins.size(); ++k) {
    hist.push_back({{"lo", std::ldexp(1.0, static_cast<int>(k))},
                    {"hi", std::ldexp(1.0, static_cast<int>(k) + 1)},
                    {"count", bins[k]}});
  }
  result.report["stretch_histogram"] = hist;

  const auto ranked = rank_edges(heat);
  json top = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(10, ranked.size()); ++k) {
    const Edge& edge = g.edge(ranked[k]);
    top.push_back({edge.p, edge.q});
  }
  result.report["top_heat_edges"] = top;
  if (lg.rows > 0 && heat.heat_total > 0.0) {
    std::vector<double> by_row(static_cast<std::size_t>(lg.rows), 0.0);
    for (std::size_t k = 0; k < heat.edges.size(); ++k) {
      by_row[static_cast<std::size_t>(g.edge(heat.edges[k]).p / lg.cols)] += heat.raw_heat[k];
    }
    for (auto& x : by_row) x /= heat.heat_total;
    result.report["heat_fraction_by_row"] = by_row;
  }
  if (!cfg.output_prefix.empty()) {
    auto heat_out = open_output(cfg.output_prefix + ".heat.tsv");
    write_heat_table(heat_out, g, heat);
    auto stretch_out = open_output(cfg.output_prefix + ".stretch.tsv");
    stretch_out.precision(17);
    stretch_out << "p\tq\tw\tstretch\n";
    for (const EdgeId e : s.offtree_edges()) {
      const Edge& edge = g.edge(e);
      stretch_out << edge.p << '\t' << edge.q << '\t' << edge.w << '\t'
                  << edge_stretch(s.tree(), edge.p, edge.q, edge.w) << '\n';
    }
  }
  result.report["wall_times"] = {{"total", clock.lap()}};
  return result;
}

CommandResult cmd_oracle_check(const RunConfig& cfg) {
  const auto lg = load_graph(cfg);
  const auto& g = lg.graph;
  if (g.num_vertices() > kDenseMaxVertices) {
    throw UsageError("oracle-check is limited to " + std::to_string(kDenseMaxVertices) + " vertices");
  }
  const auto tree = build_tree(cfg, lg);
  const auto tree_edges = tree.edges();
  json checks = json::array();
  bool all_pass = true;
  auto record = [&](json check) {
    all_pass = all_pass && check["passed"].get<bool>();
    checks.push_back(std::move(check));
  };

  const auto tree_graph = edge_subgraph(g, tree_edges);
  if (!g.has_self_weights()) {
    const double stretch = total_stretch(g, tree);
    const double trace = dense_trace_ratio(g, tree_graph);
    const double rel = std::abs(trace - stretch) / stretch;
    record({{"name", "trace_identity"},
            {"passed", rel <= 1e-8},
            {"total_stretch", stretch},
            {"trace", trace},
            {"relative_error", rel}});
  }

  // Off-tree edges in a seeded order; the first few are added one at a time.
  std::vector<EdgeId> offtree;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!tree.contains_edge(e)) offtree.push_back(e);
  }
  auto rng = make_rng(cfg.seed, Stream::kOracle);
  std::shuffle(offtree.begin(), offtree.end(), rng);
  offtree.resize(std::min<std::size_t>(offtree.size(), static_cast<std::size_t>(std::max(0, cfg.oracle_edges))));

  {
    std::vector<Edge> p_edges;
    for (const EdgeId e : tree_edges) p_edges.push_back(g.edge(e));
    // Scaling a tree edge of P up breaks the subgraph property on purpose.
    p_edges.front().w *= cfg.corrupt_weight;
    auto spectrum = [&] {
      const auto p = WeightedGraph::from_edges(g.num_vertices(), p_edges, g.self_weights());
      return dense_generalized_eigs(g, p, false).eigenvalues;
    };
    auto prev = spectrum();
    double min_eig = *std::min_element(prev.begin(), prev.end());
    bool ok = min_eig >= 1.0 - 1e-8;
    double worst_increase = 0.0;
    for (const EdgeId e : offtree) {
      p_edges.push_back(g.edge(e));
      const auto next = spectrum();
      for (std::size_t i = 0; i < next.size(); ++i) {
        const double inc = (next[i] - prev[i]) / std::max(1.0, prev[i]);
        worst_increase = std::max(worst_increase, inc);
      }
      min_eig = std::min(min_eig, *std::min_element(next.begin(), next.end()));
      prev = next;
    }
    ok = ok && min_eig >= 1.0 - 1e-8 && worst_increase <= 1e-8;
    record({{"name", "monotonicity"},
            {"passed", ok},
            {"edges_added", offtree.size()},
            {"min_eigenvalue", min_eig},
            {"worst_relative_increase", worst_increase}});
  }

  {
    double worst = 0.0;
    for (const EdgeId e : offtree) {
      std::vector<EdgeId> ids(tree_edges.begin(), tree_edges.end());
      ids.push_back(e);
      const auto with_chord = edge_subgraph(g, ids);
      const auto spec = dense_generalized_eigs(with_chord, tree_graph);
      const double gamma = rank_one_gamma(spec.eigenvectors.front(), g.edge(e));
      const double predicted = predicted_eigenvalue_after_add(spec.eigenvalues.front(), g.edge(e).w, gamma);
      const auto after = dense_generalized_eigs(with_chord, with_chord, false).eigenvalues.front();
      worst = std::max(worst, std::abs(predicted - after) / after);
    }
    record({{"name", "rank_one"},
            {"passed", worst <= 1e-6},
            {"chords", offtree.size()},
            {"worst_relative_error", worst}});
  }

  CommandResult result;
  json report;
  report["format_version"] = kFormatVersion;
  report["config"] = to_json(cfg);
  report["n"] = g.num_vertices();
  report["m"] = g.num_edges();
  report["checks"] = checks;
  report["passed"] = all_pass;
  result.report = std::move(report);
  result.exit_code = all_pass ? 0 : 1;
  return result;
}

CommandResult run_command(const RunConfig& cfg) {
  if (cfg.subcommand == "sparsify") return cmd_sparsify(cfg);
  if (cfg.subcommand == "solve") return cmd_solve(cfg);
  if (cfg.subcommand == "partition") return cmd_partition(cfg);
  if (cfg.subcommand == "stats") return cmd_stats(cfg);
  if (cfg.subcommand == "oracle-check") return cmd_oracle_check(cfg);
  throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectral graph sparsification toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Matrix Market file (SDD matrix)");
    sub->add_option("--grid", cfg.grid, "Generate an RxC mesh");
    sub->add_option("--random", cfg.random_n, "Generate a random connected graph on N vertices");
    sub->add_option("--random-extra", cfg.random_extra, "Chords added to --random (default N/2)");
    sub->add_flag("--triangle", cfg.triangle, "Use the unit triangle");
    sub->add_option("--weights", cfg.weights, "Mesh weights: unit or random")->capture_default_str();
    sub->add_option("--tree", cfg.tree, "max-weight, low-stretch or hair-comb")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Root seed for every random stream")->capture_default_str();
    sub->add_option("--t", cfg.t, "Power iteration steps for heat")->capture_default_str();
    sub->add_option("--r", cfg.r, "Random vectors for heat (0: max(4, ceil(log2 n)))")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker cap")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--output-prefix", cfg.output_prefix, "Write result files with this prefix");
  };
  auto add_densify = [&](CLI::App* sub) {
    sub->add_option("--sigma2", cfg.sigma2, "Target sigma^2")->capture_default_str()->check(CLI::Range(1.0, 1e300));
    sub->add_option("--max-rounds", cfg.max_rounds, "Densification rounds")->capture_default_str();
    sub->add_option("--round-fraction", cfg.round_fraction, "Per-round edge cap as a fraction of n")
        ->capture_default_str();
    sub->add_option("--budget", cfg.budget, "Cap on recovered edges (-1: none)")->capture_default_str();
  };

  auto* sparsify = app.add_subcommand("sparsify", "Build a sparsifier by iterative densification");
  add_common(sparsify);
  add_densify(sparsify);

  auto* solve = app.add_subcommand("solve", "Solve L_G x = b with sparsifier-preconditioned CG");
  add_common(solve);
  add_densify(solve);
  solve->add_option("--tol", cfg.tol, "Relative residual tolerance")->capture_default_str();
  solve->add_option("--max-iters", cfg.max_iters, "CG iteration cap")->capture_default_str();
  auto* rhs_file = solve->add_option("--rhs", cfg.rhs, "Right-hand side, one value per line");
  solve->add_option("--random-rhs", cfg.random_rhs, "Random right-hand side from this seed")->excludes(rhs_file);

  auto* partition = app.add_subcommand("partition", "Spectral bipartition by approximate Fiedler vector");
  add_common(partition);
  add_densify(partition);
  partition->add_option("--fiedler-iters", cfg.fiedler_iters, "Inverse power iterations")->capture_default_str();
  partition->add_flag("--compare-direct", cfg.compare_direct, "Also cut with exact inner solves");

  auto* stats = app.add_subcommand("stats", "Heat and stretch tables for a spanning tree");
  add_common(stats);

  auto* oracle = app.add_subcommand("oracle-check", "Dense eigensolver checks on a small graph");
  add_common(oracle);
  oracle->add_option("--corrupt-weight", cfg.corrupt_weight, "Scale one tree edge of P by this factor")
      ->capture_default_str();
  oracle->add_option("--oracle-edges", cfg.oracle_edges, "Off-tree edges added in the checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

  try {
    const auto result = run_command(cfg);
    const std::string text = result.report.dump(2);
    out << text << '\n';
    if (!cfg.output_prefix.empty()) {
      auto file = open_output(cfg.output_prefix + ".json");
      file << text << '\n';
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace specsparse::cli
