#pragma once

#include "indyn/world_lines.hpp"

namespace indyn {

// Validates the scenario and runs the engine matching its model.
WorldLineSet simulate(const ScenarioConfig& config);

}  // namespace indyn
