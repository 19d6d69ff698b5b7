#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopsim/gait.hpp"
#include "hopsim/robot_params.hpp"

namespace hopsim {

inline constexpr int kConfigSchemaVersion = 1;

// Flat key -> scalar map, the on-disk shape of every config file.
using FlatConfig = std::map<std::string, std::string>;

// Loads a flat YAML mapping. Throws ConfigError on missing file, parse
// failure, nesting, or a missing/mismatched schema_version.
FlatConfig load_config_file(const std::string& path);

// Applies "key=value" overrides; unknown keys are an error.
void apply_overrides(FlatConfig& cfg, const std::vector<std::string>& sets);

// Typed accessors (throw ConfigError naming the key)
double cfg_double(const FlatConfig& cfg, const std::string& key);
double cfg_double_or(const FlatConfig& cfg, const std::string& key, double fallback);
bool cfg_bool_or(const FlatConfig& cfg, const std::string& key, bool fallback);
int cfg_int_or(const FlatConfig& cfg, const std::string& key, int fallback);
std::string cfg_string_or(const FlatConfig& cfg, const std::string& key,
                          const std::string& fallback);

struct ValidationItem {
  enum Level { Pass, Warn, Fail } level;
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool ok() const {
    for (const auto& i : items)
      if (i.level == ValidationItem::Fail) return false;
    return true;
  }
};

// Rule checks for each config kind (file must carry kind: robot|gait).
ValidationReport validate_robot_config(const FlatConfig& cfg);
ValidationReport validate_gait_config(const FlatConfig& cfg);
ValidationReport validate_config_file(const std::string& path);

// Parse + validate; throws ConfigError when any rule fails.
RobotParams robot_from_config(const FlatConfig& cfg);
GaitParams gait_from_config(const FlatConfig& cfg);

}  // namespace hopsim
