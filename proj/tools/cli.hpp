#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace specsparse::cli {

inline constexpr const char* kFormatVersion = "specsparse-report/1";

/// Everything a run depends on. Serialized into every report.
struct RunConfig {
  std::string subcommand;

  // Graph source: exactly one of these.
  std::string input;
  std::string grid;  // "RxC"
  int random_n = 0;
  bool triangle = false;

  std::string weights = "unit";  // unit | random (grid only)
  int random_extra = -1;         // chords for --random; -1 picks n / 2
  std::string tree = "low-stretch";

  double sigma2 = 100.0;
  int t = 2;
  int r = 0;
  std::uint64_t seed = 42;
  int max_rounds = 20;
  double round_fraction = 0.02;
  long long budget = -1;
  int threads = 1;

  double tol = 1e-3;
  int max_iters = 1000;
  std::string rhs;
  std::optional<std::uint64_t> random_rhs;

  int fiedler_iters = 8;
  bool compare_direct = false;

  double corrupt_weight = 1.0;
  int oracle_edges = 5;

  std::string output_prefix;
};

nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Bad flags, unreadable or invalid input: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  nlohmann::ordered_json report;
  /// 0 success, 1 check or convergence failure.
  int exit_code = 0;
};

CommandResult cmd_sparsify(const RunConfig& cfg);
CommandResult cmd_solve(const RunConfig& cfg);
CommandResult cmd_partition(const RunConfig& cfg);
CommandResult cmd_stats(const RunConfig& cfg);
CommandResult cmd_oracle_check(const RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

/// Parses argv, runs the subcommand, prints the JSON report on `out` and
/// diagnostics on `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specsparse::cli
