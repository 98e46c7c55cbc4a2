#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "dip/scenario.hpp"

namespace dip {

/// Parses `key = value` lines with dotted section prefixes and `#` comments.
/// Duplicate keys are errors. Does not interpret the keys.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// Builds a Scenario from defaults plus the file's overrides. Unknown keys
/// and unparsable values throw ConfigError naming the offending key.
Scenario scenario_from_config(const std::filesystem::path& path);

/// Same, from already-parsed key/value pairs.
Scenario scenario_from_entries(const std::map<std::string, std::string>& entries);

}  // namespace dip
