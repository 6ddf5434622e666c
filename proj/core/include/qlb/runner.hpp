#pragma once

#include <string>
#include <vector>

#include "qlb/report.hpp"
#include "qlb/scenario.hpp"

namespace qlb::harness {

/// Executes the configured pipeline and aggregates the outcomes. Failures
/// inside a run (aborted consensus, frozen bonds, rejected transactions)
/// are outcomes, not errors.
RunReport run_scenario(const ScenarioConfig& config);

/// Every adversary strategy reachable from configuration, as "role:name".
std::vector<std::string> strategy_registry();

/// A small config that exercises one registry entry end to end.
ScenarioConfig config_for_strategy(const std::string& entry);

}  // namespace qlb::harness
