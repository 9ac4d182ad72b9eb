#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "blepc/model.hpp"
#include "blepc/sim.hpp"

namespace blepc {

// INI-style key/value document: [section] then key = value lines.
using ConfigSection = std::map<std::string, std::string>;
using ConfigFile = std::map<std::string, ConfigSection>;

inline constexpr const char* kConfigEnvVar = "BLEPC_CONFIG";

// Throws std::runtime_error with the source name on syntax errors.
ConfigFile parse_config(const std::string& text, const std::string& source = "<config>");
ConfigFile load_config(const std::filesystem::path& path);

// Applies [env.*], [radio], [fem], [power] and [latency]. Unknown sections or
// keys are errors.
void apply_model(const ConfigFile& cfg, ModelConfig& model);

// Scenario/controller overrides. Keys are the CLI flag names without dashes
// (env, strategy, target-rssi, inner-kp, ...), so a config [scenario] section
// and command-line flags go through the same path. "strategy" is applied
// first and resets gains to that strategy's defaults.
void apply_scenario(const ConfigSection& kv, ScenarioSpec& spec);

// Every model constant, in the format parse_config reads.
std::string dump_model(const ModelConfig& model);

}  // namespace blepc
