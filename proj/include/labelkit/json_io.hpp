#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "labelkit/model.hpp"

namespace labelkit {

using Json = nlohmann::json;

/// Rounds to 9 significant digits; every real written to JSON goes through
/// this so that parse -> dump reproduces the bytes.
double canonical_real(double value);

/// Canonical text: sorted keys, two-space indentation, trailing newline.
std::string dump_canonical(const Json& json);

Json instance_to_json(const Instance& instance);
/// Rejects unknown fields and missing required ones with the field name.
Instance instance_from_json(const Json& json);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Canonical labeling document with per-state and total costs evaluated at
/// labeling.alpha.
Json labeling_to_json(const Labeling& labeling, const Instance& instance);
Labeling labeling_from_json(const Json& json, const Instance& instance);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace labelkit
