#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scpulse/eulerian.hpp"
#include "scpulse/integrator.hpp"
#include "scpulse/lagrangian.hpp"
#include "scpulse/reference.hpp"
#include "scpulse/uniqueness.hpp"

namespace scpulse::app {

/// %.17g, locale independent.
std::string format_double(double v);

/// Shortest text that reads back to v; used in file names.
std::string short_double(double v);

void write_lagrangian_csv(const std::filesystem::path& path, const LagrangianState& s);
void write_eulerian_csv(const std::filesystem::path& path, const EulerianField& e);
void write_conserved_csv(const std::filesystem::path& path, std::span<const StepRecord> log);
void write_trace_csv(const std::filesystem::path& path, const CharTrace& trace,
                     const CharacteristicCheck& check);

struct DiffRow {
  double t = 0.0;
  double linf_u = 0.0;
  double linf_ux = 0.0;
};
void write_diff_csv(const std::filesystem::path& path, std::span<const DiffRow> rows);

}  // namespace scpulse::app
