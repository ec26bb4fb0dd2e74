#ifndef REACHPROBE_CLI_HPP
#define REACHPROBE_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace reachprobe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitViolation = 3;

enum class Subcommand { analyze, fourball, lp, certify };

/// Everything a run depends on. Unset optionals take per-subcommand
/// defaults, and the resolved values are echoed into the report.
struct RunConfig {
  Subcommand subcommand = Subcommand::analyze;

  // Domain source (analyze, certify): exactly one of these.
  std::optional<std::string> input_path;
  std::optional<std::string> builtin_name;
  std::map<std::string, double> params;

  std::optional<int> dim;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> trials;
  std::optional<double> p;
  std::optional<double> r;
  std::uint64_t seed = 0;
  std::optional<double> r_max;
  std::optional<int> refine_iters;

  // certify
  std::optional<std::string> graph_path;
  std::optional<std::vector<double>> point;
  std::optional<double> rho;
  std::optional<double> h;
  std::optional<int> grid;
  std::optional<std::string> emit_graph_path;

  std::optional<std::string> output_path;
  std::optional<std::string> csv_path;  // analyze only
};

struct RunResult {
  int exit_code = kExitOk;
  /// Report text (empty on input errors).
  std::string json;
  /// Diagnostic for stderr (empty on success).
  std::string message;
};

/// Validates cfg and runs it, reading input files and writing the graph and
/// CSV side outputs, but not the report itself.
RunResult execute(const RunConfig& cfg);

/// execute(), then writes the report to cfg.output_path or `out` and the
/// diagnostic to `err`. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig. Returns nullopt after printing help
/// (exit_code 0) or a usage error (exit_code 2).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code, std::ostream& out,
                                    std::ostream& err);

int main_entry(int argc, const char* const* argv);

}  // namespace reachprobe::cli

#endif  // REACHPROBE_CLI_HPP
