#pragma once

// JSON scenario documents.
//
//   {
//     "model": "cm" | "rs" | "goldfish" | "sinh_gordon",
//     "gamma_squared": 1.0,                       // required for cm, rs
//     "particles": [{"a": [re, im], "p": [re, im], "epsilon": 1}],
//     "init_positions": [..], "init_velocities": [..],   // goldfish
//     "time": {"start": -2, "end": 2, "samples": 401},
//     "tolerances": {"im", "root", "event", "residual", "event_margin"},
//     "scan": {"x_min", "x_max", "points"},        // sinh_gordon
//     "frame": "light_cone" | "lab"                // sinh_gordon
//   }
//
// Unknown keys are rejected. Optional blocks default to Tolerances{},
// ScanWindow{} and the light-cone frame.

#include <filesystem>
#include <string>
#include <string_view>

#include "indyn/scenario.hpp"

namespace indyn::io {

// Parses and validates. Syntax errors throw ParseError with line and column;
// missing, unknown or mistyped fields throw ParseError naming the field.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

// Stable serialization with every field spelled out and keys sorted.
std::string canonical_config(const ScenarioConfig& config);

// Lowercase hex SHA-256 of canonical_config.
std::string config_digest(const ScenarioConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace indyn::io
