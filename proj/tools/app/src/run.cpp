#include "scpulse/app/run.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "scpulse/app/validation.hpp"
#include "scpulse/errors.hpp"
#include "scpulse/reference.hpp"
#include "scpulse/uniqueness.hpp"

#ifndef SCPULSE_VERSION
#define SCPULSE_VERSION "unknown"
#endif

namespace scpulse::app {
namespace {

namespace fs = std::filesystem;

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json meta(const CliConfig& cfg, const InitialData& id, double wall_time) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  j["h"] = id.h;
  j["F0"] = id.F0;
  j["theorem_scope"] = id.theorem_scope;
  j["version"] = SCPULSE_VERSION;
  j["wall_time_s"] = wall_time;
  return j;
}

InitialData initial_data(const CliConfig& cfg) {
  return make_initial_data(Profile(cfg.profile), cfg.n);
}

}  // namespace

SolveResult solve_case(const CliConfig& cfg) {
  SolveResult res;
  res.initial = initial_data(cfg);
  const LagrangianState s0 = build_initial_lagrangian(res.initial, cfg.n, cfg.augmented);
  res.traj = integrate(s0, cfg.run_config());
  res.fields = reconstruct_all(res.traj, cfg.eulerian_size());
  return res;
}

void write_solve_outputs(const CliConfig& cfg, const SolveResult& res) {
  const fs::path& dir = cfg.out_dir;
  for (std::size_t k = 0; k < res.traj.states.size(); ++k) {
    const std::string idx = std::to_string(k);
    write_lagrangian_csv(dir / ("lagrangian_t" + idx + ".csv"), res.traj.states[k]);
    write_eulerian_csv(dir / ("eulerian_t" + idx + ".csv"), res.fields[k]);
  }
  write_conserved_csv(dir / "conserved.csv", res.traj.conserved_log);
}

std::vector<DiffRow> compare_with_reference(const CliConfig& cfg, const SolveResult& res) {
  const std::vector<RefState> ref = ref_integrate(res.initial.u0, cfg.run_config());
  std::vector<DiffRow> rows;
  for (std::size_t k = 0; k < ref.size() && k < res.traj.states.size(); ++k) {
    const EulerianField e = cfg.eulerian_size() == cfg.n ? res.fields[k]
                                                         : reconstruct(res.traj.states[k], cfg.n);
    rows.push_back({ref[k].t, max_abs_diff(e.u, ref[k].u), max_abs_diff(e.ux, diff(ref[k].u))});
  }
  return rows;
}

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    cfg.validate();
    prepare_out_dir(cfg.out_dir);

    if (cfg.command == Command::validate) {
      const ValidationCase vc{cfg.profile, cfg.n, cfg.dt, cfg.t_end};
      const auto results = run_acceptance(vc, cfg.out_dir / "determinism");
      const nlohmann::json report = to_json(results);
      write_json(cfg.out_dir / "validation.json", report);
      out << report.dump(2) << '\n';
      return report["passed"].get<bool>() ? 0 : 1;
    }

    const SolveResult res = solve_case(cfg);
    if (cfg.command == Command::solve || cfg.command == Command::compare) {
      write_solve_outputs(cfg, res);
    }
    if (cfg.command == Command::compare) {
      write_diff_csv(cfg.out_dir / "diff.csv", compare_with_reference(cfg, res));
    }
    if (cfg.command == Command::trace) {
      const SourceTerms st = accumulate_sources(res.fields, res.initial.h);
      for (double xi : cfg.labels()) {
        const CharTrace tr = trace_beta(st, xi, cfg.tol);
        const CharacteristicCheck check = verify_characteristic(tr, res.traj, res.fields);
        write_trace_csv(cfg.out_dir / ("trace_" + short_double(xi) + ".csv"), tr, check);
        out << "xi=" << short_double(xi) << " iterations=" << tr.picard_iters
            << " ratio=" << format_double(tr.contraction_ratio)
            << " mismatch=" << format_double(check.lagrangian_mismatch)
            << " ode=" << format_double(check.ode_residual) << '\n';
      }
    }
    write_json(cfg.out_dir / "meta.json", meta(cfg, res.initial, elapsed()));
    return 0;
  } catch (const NumericalError& e) {
    err << e.name() << ": " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace scpulse::app
