#pragma once

#include <iosfwd>
#include <vector>

#include "scpulse/app/config.hpp"
#include "scpulse/app/output.hpp"
#include "scpulse/eulerian.hpp"
#include "scpulse/integrator.hpp"
#include "scpulse/lagrangian.hpp"

namespace scpulse::app {

struct SolveResult {
  InitialData initial;
  Trajectory traj;
  std::vector<EulerianField> fields;
};

SolveResult solve_case(const CliConfig& cfg);

/// lagrangian_t{k}.csv, eulerian_t{k}.csv and conserved.csv in cfg.out_dir.
void write_solve_outputs(const CliConfig& cfg, const SolveResult& res);

/// Max-norm differences between the reconstructed solution and the direct
/// Eulerian solver at every snapshot, both on the n-point grid.
std::vector<DiffRow> compare_with_reference(const CliConfig& cfg, const SolveResult& res);

/// Executes one command; returns the process exit code (0 ok, 1 validation
/// failure, 2 config error, 3 numerical error).
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace scpulse::app
