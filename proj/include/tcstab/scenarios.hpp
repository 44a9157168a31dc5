#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcstab/config.hpp"
#include "tcstab/output.hpp"

namespace tcstab {

ScenarioResult run_linear_decay(const ScenarioConfig& cfg);
ScenarioResult run_resolvent_static(const ScenarioConfig& cfg);
ScenarioResult run_resolvent_spacetime(const ScenarioConfig& cfg);
ScenarioResult run_decomposition_check(const ScenarioConfig& cfg);
ScenarioResult run_nonlinear_stability(const ScenarioConfig& cfg);
ScenarioResult run_threshold_sweep(const ScenarioConfig& cfg);
ScenarioResult run_k0_instability(const ScenarioConfig& cfg);
ScenarioResult run_invariant_suite(const ScenarioConfig& cfg);

// Dispatches on cfg.scenario.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Directory a scenario writes to: cfg.output, or <output root>/<scenario>.
std::string output_dir(const ScenarioConfig& cfg);

// Suite profiles: "quick" (seconds per scenario, smoke-level resolution) and
// "full" (the resolutions and budgets of the acceptance runs).
ScenarioConfig suite_config(const std::string& scenario, const std::string& profile, std::uint64_t seed);

struct SuiteSummary {
  std::string root;
  std::vector<std::string> scenarios;
  std::vector<int> checks, failures;
  int total_failures() const;
};

// Runs every scenario into <root>/<scenario>/ and writes <root>/manifest.json.
SuiteSummary run_suite(const std::string& profile, std::uint64_t seed, const std::string& root);

// Re-derives per-file summaries from every CSV below dir, writes
// dir/report.json and returns a plain-text rendering.
std::string report_directory(const std::string& dir);

}  // namespace tcstab
