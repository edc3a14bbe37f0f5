#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scpulse/integrator.hpp"
#include "scpulse/profiles.hpp"

namespace scpulse::app {

enum class Command { solve, compare, trace, validate };

std::string_view to_string(Command c) noexcept;

/// Bad flags, bad values or an unusable output directory (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  Command command = Command::solve;
  ProfileSpec profile = ProfileSpec::sine(0.1);
  std::size_t n = 256;
  std::size_t m = 0;  // Eulerian grid size, 0 means n
  double dt = 5e-4;
  double t_end = 1.0;
  std::size_t snapshots = 11;
  bool augmented = false;
  Scheme scheme = Scheme::rk4;
  std::optional<double> drift_guard;
  std::vector<double> launch_points;  // empty means 16 equally spaced labels
  double tol = 1e-12;
  std::filesystem::path out_dir = "out";

  std::size_t eulerian_size() const noexcept { return m == 0 ? n : m; }
  std::vector<double> labels() const;
  RunConfig run_config() const;

  /// Throws ConfigError.
  void validate() const;
};

nlohmann::json to_json(const CliConfig& cfg);

struct ParseResult {
  std::optional<CliConfig> config;  // empty when the process should exit
  int exit_code = 0;
};

/// Parses argv with an optional --config file using the same keys as the
/// flags; explicit flags win over the file.
ParseResult parse_cli(int argc, const char* const* argv);

}  // namespace scpulse::app
