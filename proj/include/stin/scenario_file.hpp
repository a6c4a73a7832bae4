#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stin/scenario.hpp"

namespace stin {

/// Sectioned key-value text, kept in file order. Keys are "section.key".
struct ScenarioDocument {
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string* find(std::string_view key) const;
    /// Sets key, dropping entries that are mutually exclusive with it.
    void set(const std::string& key, const std::string& value);
};

/// Syntax only: [section] headers, key = value lines, # or ; comments.
ScenarioDocument parse_document(std::string_view text);

/// Applies units and defaults; throws ConfigError naming the offending key.
ScenarioConfig scenario_from_document(const ScenarioDocument& doc);

ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::string& path);
ScenarioDocument load_document(const std::string& path);

/// SI/linear form with 17 significant digits, so parsing it back yields an
/// identical ScenarioConfig.
std::string serialize_scenario(const ScenarioConfig& sc);
std::string serialize_document(const ScenarioDocument& doc);

}  // namespace stin
