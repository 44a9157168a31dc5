#pragma once

#include <vector>

#include "tcstab/config.hpp"
#include "tcstab/output.hpp"

namespace tcstab {

// Property checks on the discrete operators. Each group reads the flow
// parameters, grid size, sample count (0 selects the group default) and seed
// from the configuration and appends rows to the optional table.

// Kernel application against the boundary-value solve on the mapped grid,
// the manufactured stream function and the zero-mode velocity.
std::vector<Check> biot_savart_checks(const ScenarioConfig& cfg, CsvTable* table = nullptr);

// Pointwise kernel bound and the weighted kernel estimates, with N -> 2N.
std::vector<Check> kernel_bound_checks(const ScenarioConfig& cfg, CsvTable* table = nullptr);

// Hardy inequality, coercivity and its identity, and the sup-norm bound.
std::vector<Check> hardy_checks(const ScenarioConfig& cfg, CsvTable* table = nullptr);

// L2 and L1 bounds for Q_{a,b}.
std::vector<Check> q_bound_checks(const ScenarioConfig& cfg, CsvTable* table = nullptr);

// ||r^alpha w(t)|| nonincreasing for |alpha| <= |k| with B / r^2 and seeded
// bounded shears.
std::vector<Check> monotone_decay_checks(const ScenarioConfig& cfg, CsvTable* table = nullptr);

// Symmetries and consistency of the building blocks: reality of the
// nonlinear term, conjugation of T_k, duality of the H^1_k / H^-1_k pair,
// the log-weight derivative bounds and the linear limit of the IMEX stepper.
std::vector<Check> structural_checks(const ScenarioConfig& cfg);

}  // namespace tcstab
