#pragma once

// Trajectory and event exports. Numbers are written with 17 significant
// digits so a parse/serialize round trip is byte-identical.
//
//   trajectories.csv   t,line_id,x,v_est,alive   (v_est empty when undefined)
//   events.jsonl       {"kind","t_event","bracket_width","line_ids"} per line
//   metadata.json      model, canonical config, digest, tool version, counts

#include <string>
#include <string_view>
#include <vector>

#include "indyn/world_lines.hpp"

namespace indyn::io {

inline constexpr std::string_view kToolName = "indyn";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ExportBundle {
  ScenarioConfig config;
  WorldLineSet lines;
};

std::string format_number(double value);

// Rows ordered by sample time, then line id.
std::string export_csv(const WorldLineSet& lines);
std::string export_events_jsonl(const WorldLineSet& lines);
std::string export_metadata(const ExportBundle& bundle);

// Inverse of export_csv. Every line must cover the same sample times.
// Throws ParseError with the offending line number.
WorldLineSet parse_csv(std::string_view text);
std::vector<EventRecord> parse_events_jsonl(std::string_view text);

}  // namespace indyn::io
