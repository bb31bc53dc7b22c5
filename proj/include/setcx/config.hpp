#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "setcx/experiments.hpp"

namespace setcx {

/// Keys accepted in a config file, in documentation order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines (`#` starts a comment) on top of `base`.
/// Malformed lines, bad values and unknown keys raise ParseError with the
/// line number; the unknown-key message lists every valid key.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});

/// Reads and parses a config file; a missing file is a ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Applies a single key/value pair (used for both files and CLI overrides).
/// Throws ConfigError on unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

}  // namespace setcx
