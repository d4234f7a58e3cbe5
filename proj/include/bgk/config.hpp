#pragma once

#include "bgk/problems.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace bgk {

/// Sets one field from its text form. Throws ConfigError on an unknown key
/// or unparsable value.
void set_config_value(ProblemConfig& cfg, const std::string& key, const std::string& value);

/// Every field as key/value text; doubles keep full precision.
std::map<std::string, std::string> to_key_values(const ProblemConfig& cfg);

/// Rebuilds a config from a complete key/value map ("name" selects the base problem
/// when it is a known benchmark).
ProblemConfig config_from_key_values(const std::map<std::string, std::string>& kv);

/// Plain text, one `key = value` per line, `#` comments.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);
ProblemConfig read_config(const std::filesystem::path& path);
void write_config(const ProblemConfig& cfg, const std::filesystem::path& path);

} // namespace bgk
