#pragma once

#include "goldshift/construction.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace goldshift {

inline constexpr int kSpecFormatVersion = 1;

// Spec files carry the profile, one record per level and the tail rule.
// Numbers are decimal strings. A level needs lambda, N, one of n / M_prev and
// one of M / log_m; symbolic levels carry log_m with M null.
nlohmann::json construction_to_json(const Construction& c);
Construction construction_from_json(const nlohmann::json& j);

Construction read_spec_file(const std::filesystem::path& path);
void write_spec_file(const std::filesystem::path& path, const Construction& c);

nlohmann::json tail_rule_to_json(const TailRule& t);
TailRule tail_rule_from_json(const nlohmann::json& j);

}  // namespace goldshift
