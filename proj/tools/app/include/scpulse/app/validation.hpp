#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scpulse/profiles.hpp"

namespace scpulse::app {

struct ValidationCase {
  ProfileSpec profile = ProfileSpec::sine(0.1);
  std::size_t n = 256;
  double dt = 5e-4;
  double t_end = 1.0;
};

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Runs every acceptance criterion on the given case. Criteria with a fixed
/// setup (the reference-solver comparison and the stationary profiles) ignore
/// the case profile. scratch receives the two runs of the determinism check.
std::vector<CriterionResult> run_acceptance(const ValidationCase& vc,
                                            const std::filesystem::path& scratch);

nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace scpulse::app
