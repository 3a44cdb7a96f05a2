#pragma once

#include <filesystem>

#include <json.hpp>

#include "avocado/scenario.hpp"

namespace avocado::io {

inline constexpr int kSchemaVersion = 1;

/// Builds a validated spec. The variant's gains are applied first and any
/// explicit `opinion` keys override them. Throws ConfigError.
ScenarioSpec spec_from_json(const nlohmann::json& doc);

/// Full document for a spec, including every default. Loading it back gives
/// an equal spec.
nlohmann::json spec_to_json(const ScenarioSpec& spec);

/// Parses a JSON file. Throws IoError when unreadable, ConfigError on
/// malformed JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

ScenarioSpec load_config(const std::filesystem::path& path);

Family parse_family(const std::string& name, const std::string& key_path);

}  // namespace avocado::io
