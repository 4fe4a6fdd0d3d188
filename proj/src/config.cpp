#include "mcdfp/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mcdfp::io {
namespace {

using nlohmann::json;

json scalar_to_json(const YAML::Node& node) {
  const std::string& raw = node.Scalar();
  if (node.Tag() == "!") return raw;  // quoted
  if (raw == "true" || raw == "false") return raw == "true";
  if (raw == "null" || raw == "~") return nullptr;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  return raw;
}

json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return out;
    }
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Scalar:
      return scalar_to_json(node);
    default:
      return nullptr;
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be a mapping");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown config key '" + where + key + "'");
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<long long>();
}

std::vector<Vec2> points(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("'" + key + "' must be a list of [x, y] pairs");
  std::vector<Vec2> out;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) throw ConfigError("'" + key + "' entries must be [x, y]");
    out.push_back({number(p[0], key), number(p[1], key)});
  }
  return out;
}

template <typename Fn>
void each_field(const json& section, const std::string& prefix, const std::set<std::string>& allowed,
                Fn&& fn) {
  reject_unknown(section, allowed, prefix);
  for (const auto& [key, value] : section.items()) fn(key, value, prefix + key);
}

engine::ScenarioConfig from_json(const json& doc) {
  reject_unknown(doc,
                 {"preset", "robots", "targets", "variant", "horizon", "seed", "replications",
                  "learn", "comm", "mobility"},
                 "");
  engine::ScenarioConfig cfg = preset(doc.contains("preset") ? doc["preset"].get<std::string>()
                                                             : std::string("scenario1"));
  for (const auto& [key, value] : doc.items()) {
    if (key == "robots") {
      cfg.robot_starts = points(value, key);
    } else if (key == "targets") {
      cfg.targets = points(value, key);
    } else if (key == "variant") {
      if (!value.is_string()) throw ConfigError("'variant' must be a string");
      cfg.variant = engine::parse_variant(value.get<std::string>());
    } else if (key == "horizon") {
      cfg.horizon = static_cast<int>(integer(value, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(integer(value, key));
    } else if (key == "replications") {
      cfg.replications = static_cast<int>(integer(value, key));
    } else if (key == "learn") {
      each_field(value, "learn.", {"rho1", "rho2", "inertia"},
                 [&](const std::string& k, const json& v, const std::string& full) {
                   const double x = number(v, full);
                   if (k == "rho1") cfg.learn.rho1 = x;
                   if (k == "rho2") cfg.learn.rho2 = x;
                   if (k == "inertia") cfg.learn.inertia = x;
                 });
    } else if (key == "comm") {
      each_field(value, "comm.", {"eta1", "eta2", "delta1", "fading_r"},
                 [&](const std::string& k, const json& v, const std::string& full) {
                   const double x = number(v, full);
                   if (k == "eta1") cfg.comm.eta1 = x;
                   if (k == "eta2") cfg.comm.eta2 = x;
                   if (k == "delta1") cfg.comm.delta1 = x;
                   if (k == "fading_r") cfg.comm.fading_r = x;
                 });
    } else if (key == "mobility") {
      each_field(value, "mobility.", {"alpha", "dt", "coverage_tol", "step_mode"},
                 [&](const std::string& k, const json& v, const std::string& full) {
                   if (k == "step_mode") {
                     const std::string mode = v.is_string() ? v.get<std::string>() : "";
                     if (mode == "fraction") {
                       cfg.mobility.mode = mobility::StepMode::fraction;
                     } else if (mode == "clamp") {
                       cfg.mobility.mode = mobility::StepMode::clamp;
                     } else {
                       throw ConfigError("'" + full + "' must be 'fraction' or 'clamp'");
                     }
                     return;
                   }
                   const double x = number(v, full);
                   if (k == "alpha") cfg.mobility.alpha = x;
                   if (k == "dt") cfg.mobility.dt = x;
                   if (k == "coverage_tol") cfg.mobility.coverage_tol = x;
                 });
    }
  }
  try {
    cfg.validate();
  } catch (const UsageError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() { return {"scenario1", "scenario2"}; }

engine::ScenarioConfig preset(const std::string& name) {
  engine::ScenarioConfig cfg;
  if (name == "scenario1") {
    cfg.robot_starts.assign(5, Vec2{0.0, 0.0});
    cfg.targets = {{0, 1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    cfg.mobility.alpha = 0.1;
  } else if (name == "scenario2") {
    cfg.robot_starts = {{-0.5, 0}, {-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.5, -0.5}};
    cfg.targets = {{0, 0}, {-0.5, 1.5}, {-0.5, -1.5}, {0.5, 1.5}, {0.5, -1.5}};
    cfg.mobility.alpha = 0.05;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected scenario1 or scenario2)");
  }
  return cfg;
}

engine::ScenarioConfig config_from_text(const std::string& text, bool as_json) {
  json doc;
  try {
    doc = as_json ? json::parse(text) : yaml_to_json(YAML::Load(text));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  if (doc.is_null()) doc = json::object();
  if (doc.contains("preset") && !doc["preset"].is_string()) {
    throw ConfigError("'preset' must be a string");
  }
  return from_json(doc);
}

engine::ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_text(buf.str(), path.extension() == ".json");
}

std::string config_to_json(const engine::ScenarioConfig& cfg) {
  auto pts = [](const std::vector<Vec2>& ps) {
    json out = json::array();
    for (const Vec2& p : ps) out.push_back({p.x, p.y});
    return out;
  };
  json doc = {
      {"robots", pts(cfg.robot_starts)},
      {"targets", pts(cfg.targets)},
      {"variant", engine::to_string(cfg.variant)},
      {"horizon", cfg.horizon},
      {"seed", cfg.seed},
      {"replications", cfg.replications},
      {"learn", {{"rho1", cfg.learn.rho1}, {"rho2", cfg.learn.rho2}, {"inertia", cfg.learn.inertia}}},
      {"comm",
       {{"eta1", cfg.comm.eta1},
        {"eta2", cfg.comm.eta2},
        {"delta1", cfg.comm.delta1},
        {"fading_r", cfg.comm.fading_r}}},
      {"mobility",
       {{"alpha", cfg.mobility.alpha},
        {"dt", cfg.mobility.dt},
        {"coverage_tol", cfg.mobility.coverage_tol},
        {"step_mode", cfg.mobility.mode == mobility::StepMode::clamp ? "clamp" : "fraction"}}},
  };
  return doc.dump(2);
}

}  // namespace mcdfp::io
