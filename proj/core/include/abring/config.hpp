#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abring/sweep.hpp"

namespace abring {

/// Ordered key/value overrides. Later entries win.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Every key accepted in a config file (and, via its flag spelling, on the command line).
const std::vector<std::string_view>& config_keys();

/// Built-in presets: "fig1" (relativistic, high-t closed forms, tau in [0.1, 20]) and
/// "fig2" (non-relativistic, geometric closed forms, tau in [50, 10000]); both sweep
/// phi = 50, 100, 150, 200. Throws Error{Config} for any other name.
SweepConfig preset_config(std::string_view name);

/// Flat "key = value" text; '#' starts a comment; lists are comma separated.
/// Unknown keys and malformed lines are rejected with origin:line context.
KeyValues parse_key_values(std::string_view text, std::string_view origin = "<config>");

KeyValues read_config_file(const std::filesystem::path& path);

/// Applies one override onto config (no validation).
void apply_key_value(SweepConfig& config, std::string_view key, std::string_view value);

/// Preset (from cli, else file, else fig1), then file values, then cli values; validated.
SweepConfig resolve_config(const KeyValues& file_values, const KeyValues& cli_values);

/// Reads the optional file and resolves it with the command-line overrides.
SweepConfig parse_config(const KeyValues& cli_values,
                         const std::optional<std::filesystem::path>& file = std::nullopt);

/// Resolved config in the same key=value format parse_key_values accepts.
std::string format_config(const SweepConfig& config);

}  // namespace abring
