#include "indyn/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <fmt/core.h>
#include <json.hpp>

#include "indyn/config_io.hpp"
#include "indyn/errors.hpp"

namespace indyn::io {

namespace {

using json = nlohmann::json;

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(separator, begin);
    if (end == std::string_view::npos) {
      out.push_back(text.substr(begin));
      return out;
    }
    out.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
}

double parse_double(std::string_view field, std::size_t line_no) {
  const std::string copy(field);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorCode::ParseError, fmt::format("line {}: bad number '{}'", line_no, copy));
  }
  return value;
}

int parse_int(std::string_view field, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, fmt::format("line {}: bad integer '{}'", line_no, field));
  }
  return value;
}

EventKind parse_kind(const std::string& name) {
  if (name == event_kind_name(EventKind::Annihilation)) return EventKind::Annihilation;
  if (name == event_kind_name(EventKind::Creation)) return EventKind::Creation;
  throw Error(ErrorCode::ParseError, fmt::format("unknown event kind '{}'", name));
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string export_csv(const WorldLineSet& lines) {
  std::string out = "t,line_id,x,v_est,alive\n";
  if (lines.lines.empty()) return out;
  const std::size_t samples = lines.lines.front().samples.size();
  std::vector<const WorldLine*> ordered;
  for (const auto& line : lines.lines) ordered.push_back(&line);
  std::stable_sort(ordered.begin(), ordered.end(), [](const WorldLine* a, const WorldLine* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < samples; ++i) {
    for (const WorldLine* line : ordered) {
      const LineSample& s = line->samples[i];
      out += fmt::format("{},{},{},{},{}\n", format_number(s.t), line->id, format_number(s.x),
                         s.v_est ? format_number(*s.v_est) : std::string(), s.alive ? 1 : 0);
    }
  }
  return out;
}

std::string export_events_jsonl(const WorldLineSet& lines) {
  std::string out;
  for (const auto& ev : lines.events) {
    out += fmt::format("{{\"kind\":\"{}\",\"t_event\":{},\"bracket_width\":{},\"line_ids\":[{},{}]}}\n",
                       event_kind_name(ev.kind), format_number(ev.t_event), format_number(ev.t_bracket_width),
                       ev.line_ids[0], ev.line_ids[1]);
  }
  return out;
}

std::string export_metadata(const ExportBundle& bundle) {
  json doc;
  doc["tool"] = std::string(kToolName);
  doc["version"] = std::string(kToolVersion);
  doc["model"] = std::string(model_name(bundle.config.model));
  doc["config"] = json::parse(canonical_config(bundle.config));
  doc["config_digest"] = config_digest(bundle.config);
  doc["lines"] = bundle.lines.lines.size();
  doc["samples"] = bundle.lines.lines.empty() ? 0 : bundle.lines.lines.front().samples.size();
  doc["events"] = bundle.lines.events.size();
  doc["constants"] = json::object();
  for (const auto& [name, value] : bundle.lines.constants) doc["constants"][name] = value;
  return doc.dump(2) + "\n";
}

WorldLineSet parse_csv(std::string_view text) {
  const auto rows = split(text, '\n');
  if (rows.empty() || rows.front() != "t,line_id,x,v_est,alive") {
    throw Error(ErrorCode::ParseError, "line 1: expected header 't,line_id,x,v_est,alive'");
  }
  std::map<int, WorldLine> by_id;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t line_no = r + 1;
    if (rows[r].empty()) {
      if (r + 1 == rows.size()) break;
      throw Error(ErrorCode::ParseError, fmt::format("line {}: empty row", line_no));
    }
    const auto fields = split(rows[r], ',');
    if (fields.size() != 5) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: expected 5 fields, got {}", line_no, fields.size()));
    }
    LineSample sample;
    sample.t = parse_double(fields[0], line_no);
    const int id = parse_int(fields[1], line_no);
    sample.x = parse_double(fields[2], line_no);
    if (!fields[3].empty()) sample.v_est = parse_double(fields[3], line_no);
    if (fields[4] != "0" && fields[4] != "1") {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: alive must be 0 or 1", line_no));
    }
    sample.alive = fields[4] == "1";
    auto& line = by_id[id];
    line.id = id;
    line.samples.push_back(sample);
  }
  WorldLineSet out;
  for (auto& [id, line] : by_id) out.lines.push_back(std::move(line));
  for (const auto& line : out.lines) {
    const auto& reference = out.lines.front().samples;
    if (line.samples.size() != reference.size()) {
      throw Error(ErrorCode::ParseError, fmt::format("line_id {} has {} samples, expected {}", line.id,
                                                     line.samples.size(), reference.size()));
    }
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (line.samples[i].t != reference[i].t) {
        throw Error(ErrorCode::ParseError, fmt::format("line_id {} sample {} has a mismatched time", line.id, i));
      }
    }
  }
  return out;
}

std::vector<EventRecord> parse_events_jsonl(std::string_view text) {
  std::vector<EventRecord> out;
  const auto rows = split(text, '\n');
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    try {
      const json doc = json::parse(rows[r].begin(), rows[r].end());
      EventRecord ev;
      ev.kind = parse_kind(doc.at("kind").get<std::string>());
      ev.t_event = doc.at("t_event").get<double>();
      ev.t_bracket_width = doc.at("bracket_width").get<double>();
      const auto ids = doc.at("line_ids").get<std::vector<int>>();
      if (ids.size() != 2) throw Error(ErrorCode::ParseError, "line_ids must have two entries");
      ev.line_ids = {ids[0], ids[1]};
      ev.t_lo = ev.t_event - 0.5 * ev.t_bracket_width;
      ev.t_hi = ev.t_event + 0.5 * ev.t_bracket_width;
      out.push_back(ev);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: {}", r + 1, e.what()));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, fmt::format("line {}: {}", r + 1, e.what()));
    }
  }
  return out;
}

}  // namespace indyn::io
