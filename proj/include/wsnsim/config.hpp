#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wsnsim/sim.hpp"

namespace wsnsim {

// Parses and validates a run configuration. Unknown keys are rejected;
// `overrides` are "dotted.key=value" pairs applied before validation.
SimConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});
SimConfig config_from_json(nlohmann::json doc);

// Fully resolved config (every default made explicit) for replay.
nlohmann::json config_to_json(const SimConfig& config);

void apply_override(nlohmann::json& doc, const std::string& key_value);

}  // namespace wsnsim
