#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace geostat::cli {

enum class Command {
  classical_distance,
  jeffreys,
  multinomial_experiment,
  monotone_stress,
  mean,
  monotone_metric,
  fidelity,
  bures_distance,
  geodesic,
  optimal_measurement,
  povm_search,
  billiard,
  verify_all,
};

enum class Format { json, csv };

/// Exit codes: success, validation error (bad flags or input), numerical
/// failure (module error or failed verification).
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

struct RunConfig {
  Command command = Command::verify_all;
  std::vector<std::string> inputs;
  std::uint64_t seed = 20051;
  std::optional<double> tol;
  std::optional<int> trials;
  std::optional<long> samples;
  int grid = 200;
  std::optional<int> dim;
  std::string out;  // empty: write to the given stream
  Format format = Format::json;
  std::string f = "arithmetic";
};

const std::vector<std::pair<std::string, Command>>& command_names();
std::string command_name(Command c);

/// Runs one subcommand. The report (or a JSON error object) goes to `out`
/// unless config.out names a file. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out);

/// Parses argv into a RunConfig and runs it. Usage errors exit with 1.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace geostat::cli
