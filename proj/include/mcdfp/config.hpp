#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcdfp/engine.hpp"

namespace mcdfp::io {

// Config file could not be read or does not match the schema.
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

std::vector<std::string> preset_names();

// "scenario1": five robots at the origin, alpha 0.1.
// "scenario2": two separated robot clusters, alpha 0.05.
engine::ScenarioConfig preset(const std::string& name);

// Strict schema over a parsed document:
//
//   preset: scenario1          # base the remaining keys override
//   robots: [[x, y], ...]
//   targets: [[x, y], ...]
//   variant: mcdfp | cdfp | dfp
//   horizon: 100
//   seed: 7
//   replications: 50
//   learn:    {rho1, rho2, inertia}
//   comm:     {eta1, eta2, delta1, fading_r}
//   mobility: {alpha, dt, coverage_tol, step_mode: fraction | clamp}
//
// Unknown keys are rejected; missing keys keep the base values.
engine::ScenarioConfig config_from_text(const std::string& text, bool json);

// YAML by default; files ending in .json are read as JSON.
engine::ScenarioConfig load_config(const std::filesystem::path& path);

// Inverse of config_from_text (JSON encoding).
std::string config_to_json(const engine::ScenarioConfig& config);

}  // namespace mcdfp::io
