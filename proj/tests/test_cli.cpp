#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "cli.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/matrix_market.hpp"

using namespace specsparse;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  ordered_json report;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "specsparse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  if (!o.out.empty() && o.out.front() == '{') o.report = ordered_json::parse(o.out);
  return o;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "specsparse_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

ordered_json without_timings(ordered_json j) {
  j.erase("wall_times");
  j.erase("timings");
  return j;
}

}  // namespace

TEST_CASE("sparsify reports the configuration and writes its files") {
  const auto prefix = (scratch_dir() / "grid").string();
  const auto o = invoke({"sparsify", "--grid", "30x30", "--sigma2", "20", "--output-prefix", prefix});
  REQUIRE(o.code == 0);
  const auto& r = o.report;
  CHECK(r["format_version"] == cli::kFormatVersion);
  CHECK(r["config"]["subcommand"] == "sparsify");
  CHECK(r["config"]["sigma2"] == 20.0);
  CHECK(r["config"]["seed"] == 42);
  CHECK(r["n"] == 900);
  CHECK(r["m"] == 1740);
  for (const char* key : {"tree_total_stretch", "rounds", "edges_added_per_round", "lambda_max_est",
                          "lambda_min_est", "sigma2_est", "density", "wall_times"}) {
    CHECK_MESSAGE(r.contains(key), key);
  }
  CHECK(r["sigma2_est"].get<double>() <= 20.0);
  CHECK(std::filesystem::exists(prefix + ".mtx"));
  CHECK(std::filesystem::exists(prefix + ".edges.tsv"));
  CHECK(std::filesystem::exists(prefix + ".json"));
  const auto back = read_matrix_market(std::filesystem::path(prefix + ".mtx"));
  CHECK(back.graph.num_vertices() == 900);
}

TEST_CASE("same configuration gives byte-identical reports apart from timings") {
  const auto a = invoke({"sparsify", "--grid", "25x25", "--weights", "random", "--sigma2", "10"});
  const auto b = invoke({"sparsify", "--grid", "25x25", "--weights", "random", "--sigma2", "10"});
  REQUIRE(a.code == 0);
  CHECK(without_timings(a.report).dump(2) == without_timings(b.report).dump(2));
}

TEST_CASE("a tree input has nothing to recover") {
  const auto dir = scratch_dir();
  const auto path = (dir / "tree.mtx").string();
  write_matrix_market(std::filesystem::path(path), generate_random_connected(50, 0, 3));
  const auto o = invoke({"sparsify", "--input", path});
  REQUIRE(o.code == 0);
  CHECK(o.report["sigma2_est"].get<double>() == doctest::Approx(1.0));
  CHECK(o.report["rounds"] == 0);
}

TEST_CASE("solve honours the default tolerance") {
  const auto o = invoke({"solve", "--grid", "40x40", "--sigma2", "200", "--random-rhs", "5"});
  REQUIRE(o.code == 0);
  CHECK(o.report["config"]["tol"] == 1e-3);
  CHECK(o.report["converged"] == true);
  CHECK(o.report["relative_residual"].get<double>() <= 1e-3);
  CHECK(o.report["iterations"].get<int>() >= 1);
}

TEST_CASE("missing input is a usage error") {
  const auto o = invoke({"solve", "--input", "/nonexistent/graph.mtx"});
  CHECK(o.code == 2);
  CHECK_FALSE(o.err.empty());
  CHECK(invoke({"sparsify", "--bogus-flag"}).code == 2);
  CHECK(invoke({"sparsify"}).code == 2);
}

TEST_CASE("partition with a direct comparison") {
  const auto o = invoke({"partition", "--grid", "20x20", "--weights", "random", "--compare-direct"});
  REQUIRE(o.code == 0);
  CHECK(o.report["disagreement_vs_direct"].get<double>() <= 0.04);
  CHECK(o.report["positive"].get<int>() + o.report["negative"].get<int>() == 400);
}

TEST_CASE("stats tables") {
  const auto prefix = (scratch_dir() / "tri").string();
  const auto o = invoke({"stats", "--triangle", "--tree", "max-weight", "--output-prefix", prefix});
  REQUIRE(o.code == 0);
  std::ifstream heat(prefix + ".heat.tsv");
  std::string line;
  int rows = 0;
  std::getline(heat, line);
  while (std::getline(heat, line)) ++rows;
  CHECK(rows == 1);

  const auto comb_prefix = (scratch_dir() / "comb").string();
  const auto c = invoke({"stats", "--grid", "60x60", "--tree", "hair-comb", "--output-prefix", comb_prefix});
  REQUIRE(c.code == 0);
  std::ifstream table(comb_prefix + ".heat.tsv");
  std::getline(table, line);
  double last = INFINITY;
  Vertex p = 0, q = 0;
  double raw = 0.0, norm = 0.0;
  int top_rows = 0, total = 0;
  while (table >> p >> q >> raw >> norm) {
    CHECK(raw <= last);
    last = raw;
    if (total < 30) top_rows += p / 60 < 10 ? 1 : 0;
    ++total;
  }
  CHECK(top_rows >= 27);
}

TEST_CASE("oracle check verdicts") {
  const auto tri = invoke({"oracle-check", "--triangle"});
  CHECK(tri.code == 0);
  CHECK(tri.report["passed"] == true);
  const auto a = invoke({"oracle-check", "--random", "100", "--seed", "9"});
  const auto b = invoke({"oracle-check", "--random", "100", "--seed", "9"});
  CHECK(a.code == b.code);
  CHECK(without_timings(a.report).dump() == without_timings(b.report).dump());
  CHECK(a.code == 0);
  const auto bad = invoke({"oracle-check", "--random", "100", "--corrupt-weight", "5"});
  CHECK(bad.code == 1);
  CHECK(bad.report["passed"] == false);
  CHECK(invoke({"oracle-check", "--grid", "50x50"}).code == 2);
}
