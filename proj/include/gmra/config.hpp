#pragma once

#include "gmra/msystems.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gmra {

using json = nlohmann::json;

// A filter system as read from a config file. Geometry is "p/q" strings only;
// values may be exact tokens ("sqrt2", "-1/2", "3/4*sqrt2") or plain numbers.
struct SystemConfig {
  std::string name;
  IntMatrix A;
  MultiplicityFn m;
  std::vector<std::vector<json>> lowpass, highpass;  // raw entries, c x c and c~ x c
  std::optional<ValueMatrix> section_at_zero;        // expected unitary section at 0
  json raw;
};

Rational parse_rational_field(const json& v, const std::string& where);
Value parse_value_token(const json& v, const std::string& where);
std::string value_token(const Value& v);  // inverse of parse_value_token for exact values

SystemConfig parse_system_config(const json& j);
SystemConfig load_system_config(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);

// ConfigError for malformed entries; structural failures come from make_filter_system.
SystemPtr build_system(const SystemConfig& cfg);
// Shape checks only; the caller runs check_structure and reports.
SystemPtr assemble_system(const SystemConfig& cfg);

// Entries that are neither piecewise, smooth nor sampled are sampled on `grid`.
json system_to_json(const FilterSystem& sys, const std::vector<TorusPoint>& grid = {},
                    const std::optional<ValueMatrix>& section_at_zero = {});

// {"type": "journe_loop", "epsilon": "1/100", "row_phase": -1}
LoopElement parse_loop_config(const json& j);
json journe_loop_config(const Rational& epsilon = default_epsilon(), int row_phase = -1);

// Shipped example configs, keyed by file name.
std::vector<std::pair<std::string, json>> example_configs();

}  // namespace gmra
