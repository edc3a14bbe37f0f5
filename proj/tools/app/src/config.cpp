#include "scpulse/app/config.hpp"

#include <cmath>
#include <iostream>
#include <map>

#include <CLI11.hpp>

namespace scpulse::app {

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::solve: return "solve";
    case Command::compare: return "compare";
    case Command::trace: return "trace";
    case Command::validate: return "validate";
  }
  return "solve";
}

std::vector<double> CliConfig::labels() const {
  if (!launch_points.empty()) return launch_points;
  std::vector<double> xi(16);
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = static_cast<double>(i) / 16.0;
  return xi;
}

RunConfig CliConfig::run_config() const {
  RunConfig rc;
  rc.n = n;
  rc.dt = dt;
  rc.t_end = t_end;
  rc.output_times = RunConfig::uniform_times(t_end, snapshots);
  rc.augmented = augmented;
  rc.scheme = scheme;
  rc.drift_guard = drift_guard;
  return rc;
}

void CliConfig::validate() const {
  try {
    profile.validate();
    run_config().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (m != 0 && m < kMinGridSize) throw ConfigError("m must be >= 8");
  if (snapshots < 2) throw ConfigError("snapshots must be >= 2");
  if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
  for (double xi : launch_points) {
    if (!std::isfinite(xi)) throw ConfigError("launch points must be finite");
  }
}

nlohmann::json to_json(const CliConfig& cfg) {
  nlohmann::json j;
  j["command"] = to_string(cfg.command);
  j["init"] = to_string(cfg.profile.family);
  j["profile"] = cfg.profile.describe();
  j["amplitude"] = cfg.profile.amplitudes;
  j["mode"] = cfg.profile.modes;
  j["constant"] = cfg.profile.constant;
  j["n"] = cfg.n;
  j["m"] = cfg.eulerian_size();
  j["dt"] = cfg.dt;
  j["t_end"] = cfg.t_end;
  j["snapshots"] = cfg.snapshots;
  j["augmented"] = cfg.augmented;
  j["scheme"] = to_string(cfg.scheme);
  j["drift_guard"] = cfg.drift_guard ? nlohmann::json(*cfg.drift_guard) : nlohmann::json(nullptr);
  j["xi"] = cfg.labels();
  j["tol"] = cfg.tol;
  j["out"] = cfg.out_dir.string();
  return j;
}

ParseResult parse_cli(int argc, const char* const* argv) {
  CLI::App app{"Lagrangian solver and verification suite for the periodic single-cycle pulse equation",
               "scpulse"};
  app.set_config("--config", "", "TOML or INI file using the same keys as the flags");
  app.get_formatter()->column_width(34);

  std::string command;
  std::string init = "sine";
  std::vector<double> amplitudes;
  std::vector<int> modes;
  double constant = 0.0;
  std::string scheme = "rk4";
  double drift_guard = 0.0;
  CliConfig cfg;
  std::string out = cfg.out_dir.string();

  const std::map<std::string, Command> commands = {{"solve", Command::solve},
                                                   {"compare", Command::compare},
                                                   {"trace", Command::trace},
                                                   {"validate", Command::validate}};
  app.add_option("command", command, "solve | compare | trace | validate")
      ->required()
      ->check(CLI::IsMember({"solve", "compare", "trace", "validate"}));
  app.add_option("--init", init, "initial profile family")
      ->check(CLI::IsMember({"sine", "multisine", "zero", "constant"}))
      ->capture_default_str();
  app.add_option("--amplitude", amplitudes, "amplitude(s), comma separated (default 0.1)")
      ->delimiter(',');
  app.add_option("--mode", modes, "mode number(s), comma separated (default 1, 2, ...)")
      ->delimiter(',');
  app.add_option("--constant", constant, "value for --init constant")->capture_default_str();
  app.add_option("--n", cfg.n, "Lagrangian grid size")->capture_default_str();
  app.add_option("--m", cfg.m, "Eulerian grid size (default n)");
  app.add_option("--dt", cfg.dt, "time step")->capture_default_str();
  app.add_option("--t-end", cfg.t_end, "final time")->capture_default_str();
  app.add_option("--snapshots", cfg.snapshots, "equally spaced output times, ends included")
      ->capture_default_str();
  app.add_flag("--augmented", cfg.augmented, "evolve y_xi and U_xi as extra unknowns");
  app.add_option("--scheme", scheme, "time integrator")
      ->check(CLI::IsMember({"rk4", "heun"}))
      ->capture_default_str();
  auto* guard = app.add_option("--drift-guard", drift_guard,
                               "abort when an invariant residual exceeds this value");
  app.add_option("--xi", cfg.launch_points, "launch labels for trace, comma separated")
      ->delimiter(',');
  app.add_option("--tol", cfg.tol, "Picard tolerance for trace")->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return {std::nullopt, code == 0 ? 0 : 2};
  }

  try {
    cfg.command = commands.at(command);
    cfg.scheme = parse_scheme(scheme);
    if (guard->count() > 0) cfg.drift_guard = drift_guard;
    cfg.out_dir = out;
    const ProfileFamily family = parse_profile_family(init);
    switch (family) {
      case ProfileFamily::zero: cfg.profile = ProfileSpec::zero(); break;
      case ProfileFamily::constant: cfg.profile = ProfileSpec::constant_value(constant); break;
      case ProfileFamily::sine:
        if (amplitudes.size() > 1) throw ConfigError("sine takes a single amplitude");
        if (modes.size() > 1) throw ConfigError("sine takes a single mode");
        cfg.profile = ProfileSpec::sine(amplitudes.empty() ? 0.1 : amplitudes[0],
                                        modes.empty() ? 1 : modes[0]);
        break;
      case ProfileFamily::multisine:
        if (amplitudes.empty()) throw ConfigError("multisine needs --amplitude");
        if (modes.empty()) {
          for (std::size_t i = 0; i < amplitudes.size(); ++i) modes.push_back(static_cast<int>(i) + 1);
        }
        cfg.profile = ProfileSpec::multisine(amplitudes, modes);
        break;
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }
  return {cfg, 0};
}

}  // namespace scpulse::app
