#pragma once

// Command-line front end: one command per invocation, a p or p-range sweep,
// and a table of rows written as CSV or JSON.
//
//   gkw lambda --p 1
//   gkw bounds --p-range 2..10 --format csv
//   gkw verify --suite sandwich --p-range 2..20
//
// Exit status: 0 success, 1 a verification check failed, 2 usage or I/O error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkw/table.hpp"

namespace gkw {

enum class Command { kLambda, kBounds, kSandwich, kEvolve, kSpectrum, kMontecarlo, kVerify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::kLambda;
  int p_min = 1;
  int p_max = 1;
  std::size_t degree = 64;
  long cutoff = 10000;
  double tol = 1e-10;
  std::size_t steps = 30;
  std::size_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  Format format = Format::kJson;
  std::string output;  // empty: standard output
  std::string suite = "all";
  std::size_t dim = 64;

  /// Throws std::invalid_argument on an empty range, p < 1, a nonpositive
  /// tolerance, an unknown suite or a montecarlo run without a seed.
  void validate() const;
};

/// "7" or "2..10".
std::pair<int, int> parse_p_range(std::string_view text);

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

/// Verification suites in run order; "all" selects every one.
const std::vector<std::string>& verify_suites();

/// Rows of one command, sorted by p.
std::vector<Row> compute(const RunConfig& config);

/// Every check of the selected suites as a row with value, admissible
/// [lower, upper] and pass. A suite that throws yields a failing row.
std::vector<Row> verify_all(const RunConfig& config);

/// Runs a parsed configuration and writes its table.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (and an optional --config file of key=value lines; flags win)
/// and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkw
