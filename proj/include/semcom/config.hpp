#pragma once

#include <string>

#include <json.hpp>

#include "semcom/pipeline.hpp"

namespace semcom {

// Unknown keys are rejected so typos cannot silently fall back to defaults;
// every error names the offending field. Missing keys keep their defaults.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

// Throws IoError (missing file), ParseError (bad JSON), ConfigError (bad field).
ExperimentConfig load_experiment_config(const std::string& path);

// Full resolved config, defaults included; keys sorted, so dumps are stable.
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

}  // namespace semcom
