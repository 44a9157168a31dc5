#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcstab/grid.hpp"
#include "tcstab/params.hpp"

namespace tcstab {

// Scenario-level options. Zero or empty values are filled per scenario by
// resolve_defaults.
struct RunSpec {
  std::vector<int> modes;
  std::vector<double> alphas;
  std::vector<double> qs{1, 2};
  std::vector<double> betas{0, 1, 2};
  std::vector<double> amplitudes{0.01, 0.1, 1.0, 10.0};
  int samples = 0;
  double horizon = 0.0;    // final time in units of 1 / kappa
  double dt_scale = 0.05;  // dt = dt_scale / kappa
  double dt_max = 1.0;
  double amplitude = 0.01; // M(0) in units of (nu |B|)^{1/2}
  int cadence = 200;       // diagnostic samples per run
  bool dealias = false;
  bool nonlinear = true;
  bool unit_weight = false;
  bool refine = true;      // repeat on the refined grid and compare
  double nu_t_lo = 10.0, nu_t_hi = 1000.0;
};

struct ScenarioConfig {
  std::string scenario;
  FlowParams flow;
  GridSpec grid;
  RunSpec run;
  std::uint64_t seed = 1;
  std::string output;  // empty selects <output root>/<scenario>
};

const std::vector<std::string>& scenario_names();

// Line-oriented "key = value" text with [flow], [grid] and [run] sections.
// Flow keys and scenario/seed/output may also appear before any section.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_json(const std::string& text);
// Chooses the format from the extension (.json) or the first character.
ScenarioConfig parse_config(const std::string& path);

void resolve_defaults(ScenarioConfig& cfg);
void validate(const ScenarioConfig& cfg);

// Resolved configuration in the text format; parse_config_text round-trips it.
std::string echo_config(const ScenarioConfig& cfg);
// The same content on one line, for CSV comment headers.
std::string config_summary(const ScenarioConfig& cfg);

std::string output_root();  // TCSTAB_OUTPUT_ROOT, default "tcstab-out"

}  // namespace tcstab
