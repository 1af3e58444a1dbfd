#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crtvss/curve/dss.hpp"
#include "crtvss/math/ab_params.hpp"
#include "crtvss/sim/transcript.hpp"

namespace crtvss::sim {

struct ScenarioConfig {
  std::string name;
  uint64_t seed = 0;
  std::optional<AbParams> params;  // scenarios default to the small fixture set
  std::string message = "distributed authentication request";
};

struct ScenarioResult {
  Transcript transcript;
  std::string verdict;
  // Scenario-specific outputs (signature fields, recovered secrets, ...),
  // all hex- or decimal-encoded for direct CLI emission.
  std::map<std::string, std::string> outputs;
};

// Registered scenario names, in dispatch order.
std::vector<std::string> ScenarioNames();

// Deterministic: one (name, seed) pair always produces the same
// transcript, byte for byte. Throws Error(kUnknownScenario).
ScenarioResult RunScenario(const ScenarioConfig& config);

}  // namespace crtvss::sim
