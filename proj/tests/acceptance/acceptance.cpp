// Runs every acceptance criterion on the default case (u0 = 0.1 sin(2 pi x),
// N = 256, dt = 5e-4, T = 1) and prints one line per criterion. Thresholds
// are pinned here as well, so loosening them in the suite makes this fail.

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include "scpulse/app/validation.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "scpulse_acceptance";

  struct Pinned {
    double threshold;
    bool lower_bound;
  };
  const std::map<std::string, Pinned> pinned = {
      {"conservation.E", {1e-8, false}},     {"conservation.F", {1e-8, false}},
      {"invariants.fd", {1e-6, false}},      {"invariants.augmented", {1e-8, false}},
      {"bounds", {1e-10, false}},            {"cross_coordinate", {1e-5, false}},
      {"oracle.agreement", {1e-4, false}},   {"oracle.refinement", {3.0, true}},
      {"weak.residual", {1e-3, false}},      {"weak.order", {1.0, true}},
      {"tracer.contraction", {0.5, false}},  {"tracer.mismatch", {5e-4, false}},
      {"tracer.lipschitz", {1.01, false}},   {"stationary", {1e-12, false}},
      {"rk4_order", {14.0, true}},           {"determinism", {0.0, false}},
  };

  const auto results = scpulse::app::run_acceptance(scpulse::app::ValidationCase{}, scratch);
  int failures = 0;
  std::size_t seen = 0;
  for (const auto& r : results) {
    const auto it = pinned.find(r.id);
    bool ok = r.passed;
    std::string note;
    if (it == pinned.end()) {
      ok = false;
      note = " [unknown criterion]";
    } else {
      ++seen;
      if (r.threshold != it->second.threshold) {
        ok = false;
        note = " [threshold changed]";
      }
      const bool holds = it->second.lower_bound ? r.measured >= it->second.threshold
                                                : r.measured <= it->second.threshold;
      if (!holds) ok = false;
    }
    std::printf("%s  %-22s %-12.4g %s %-10.4g %s%s%s\n", ok ? "PASS" : "FAIL", r.id.c_str(), r.measured,
                it != pinned.end() && it->second.lower_bound ? ">=" : "<=", r.threshold,
                r.description.c_str(), r.detail.empty() ? "" : (" (" + r.detail + ")").c_str(), note.c_str());
    if (!ok) ++failures;
  }
  if (seen != pinned.size()) {
    std::printf("FAIL  %zu of %zu criteria reported\n", seen, pinned.size());
    ++failures;
  }
  std::printf("%s: %d failing\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
