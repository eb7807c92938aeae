#include "indyn/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "indyn/errors.hpp"

namespace indyn::io {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void reject_unknown(const json& object, const std::string& where, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(fmt::format("unknown field '{}{}'", where, key));
    }
  }
}

const json& object_at(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) fail(fmt::format("missing field '{}{}'", where, key));
  const json& value = doc.at(key);
  if (!value.is_object()) fail(fmt::format("field '{}{}' must be an object", where, key));
  return value;
}

double number(const json& value, const std::string& name) {
  if (!value.is_number()) fail(fmt::format("field '{}' must be a number", name));
  return value.get<double>();
}

double number_at(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) fail(fmt::format("missing field '{}{}'", where, key));
  return number(doc.at(key), where + key);
}

std::size_t count_at(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) fail(fmt::format("missing field '{}{}'", where, key));
  const json& value = doc.at(key);
  if (!value.is_number_unsigned()) fail(fmt::format("field '{}{}' must be a non-negative integer", where, key));
  return value.get<std::size_t>();
}

Complex complex_at(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) fail(fmt::format("missing field '{}{}'", where, key));
  const json& value = doc.at(key);
  if (!value.is_array() || value.size() != 2) fail(fmt::format("field '{}{}' must be a [re, im] pair", where, key));
  return {number(value[0], where + key + "[0]"), number(value[1], where + key + "[1]")};
}

std::vector<double> numbers_at(const json& doc, const std::string& key) {
  if (!doc.contains(key)) fail(fmt::format("missing field '{}'", key));
  const json& value = doc.at(key);
  if (!value.is_array()) fail(fmt::format("field '{}' must be an array", key));
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(number(value[i], fmt::format("{}[{}]", key, i)));
  return out;
}

Model parse_model(const json& doc) {
  if (!doc.contains("model")) fail("missing field 'model'");
  if (!doc.at("model").is_string()) fail("field 'model' must be a string");
  const auto name = doc.at("model").get<std::string>();
  for (Model m : {Model::CalogeroMoser, Model::RuijsenaarsSchneider, Model::Goldfish, Model::SinhGordon}) {
    if (model_name(m) == name) return m;
  }
  fail(fmt::format("field 'model': unknown model '{}'", name));
}

std::vector<ParticleParams> parse_particles(const json& doc) {
  if (!doc.contains("particles")) fail("missing field 'particles'");
  const json& list = doc.at("particles");
  if (!list.is_array()) fail("field 'particles' must be an array");
  std::vector<ParticleParams> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = fmt::format("particles[{}].", i);
    const json& item = list[i];
    if (!item.is_object()) fail(fmt::format("field 'particles[{}]' must be an object", i));
    reject_unknown(item, where, {"a", "p", "epsilon"});
    ParticleParams particle;
    particle.a = complex_at(item, "a", where);
    particle.p = complex_at(item, "p", where);
    if (item.contains("epsilon")) {
      if (!item.at("epsilon").is_number_integer()) fail(fmt::format("field '{}epsilon' must be an integer", where));
      particle.epsilon = item.at("epsilon").get<int>();
    }
    out.push_back(particle);
  }
  return out;
}

ScenarioConfig parse_document(const json& doc) {
  if (!doc.is_object()) fail("document must be a JSON object");
  reject_unknown(doc, "", {"model", "gamma_squared", "particles", "init_positions", "init_velocities", "time",
                           "tolerances", "scan", "frame"});
  ScenarioConfig config;
  config.model = parse_model(doc);
  const bool spectral = config.model == Model::CalogeroMoser || config.model == Model::RuijsenaarsSchneider;
  if (spectral || doc.contains("gamma_squared")) config.gamma_squared = number_at(doc, "gamma_squared", "");
  if (config.model == Model::Goldfish) {
    config.init_positions = numbers_at(doc, "init_positions");
    config.init_velocities = numbers_at(doc, "init_velocities");
    if (doc.contains("particles")) config.particles = parse_particles(doc);
  } else {
    config.particles = parse_particles(doc);
    if (doc.contains("init_positions")) config.init_positions = numbers_at(doc, "init_positions");
    if (doc.contains("init_velocities")) config.init_velocities = numbers_at(doc, "init_velocities");
  }

  const json& time = object_at(doc, "time", "");
  reject_unknown(time, "time.", {"start", "end", "samples"});
  config.time = {number_at(time, "start", "time."), number_at(time, "end", "time."),
                 count_at(time, "samples", "time.")};

  if (doc.contains("tolerances")) {
    const json& tol = object_at(doc, "tolerances", "");
    reject_unknown(tol, "tolerances.", {"im", "root", "event", "residual", "event_margin"});
    auto read = [&tol](const char* key, double& target) {
      if (tol.contains(key)) target = number(tol.at(key), std::string("tolerances.") + key);
    };
    read("im", config.tol.im);
    read("root", config.tol.root);
    read("event", config.tol.event);
    read("residual", config.tol.residual);
    read("event_margin", config.tol.event_margin);
  }
  if (doc.contains("scan")) {
    const json& scan = object_at(doc, "scan", "");
    reject_unknown(scan, "scan.", {"x_min", "x_max", "points"});
    if (scan.contains("x_min")) config.scan.x_min = number(scan.at("x_min"), "scan.x_min");
    if (scan.contains("x_max")) config.scan.x_max = number(scan.at("x_max"), "scan.x_max");
    if (scan.contains("points")) config.scan.points = count_at(scan, "points", "scan.");
  }
  if (doc.contains("frame")) {
    const json& frame = doc.at("frame");
    if (frame == "light_cone") {
      config.frame = Frame::LightCone;
    } else if (frame == "lab") {
      config.frame = Frame::Lab;
    } else {
      fail("field 'frame' must be \"light_cone\" or \"lab\"");
    }
  }
  return config;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ScenarioConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    fail(fmt::format("syntax error at line {}, column {}", line, column));
  }
  return validate_scenario(parse_document(doc));
}

ScenarioConfig load_config_file(const std::filesystem::path& path) { return load_config(read_text_file(path)); }

std::string canonical_config(const ScenarioConfig& config) {
  json doc;
  doc["model"] = std::string(model_name(config.model));
  doc["gamma_squared"] = config.gamma_squared;
  doc["particles"] = json::array();
  for (const auto& particle : config.particles) {
    doc["particles"].push_back({{"a", complex_json(particle.a)},
                                {"p", complex_json(particle.p)},
                                {"epsilon", particle.epsilon}});
  }
  doc["init_positions"] = config.init_positions;
  doc["init_velocities"] = config.init_velocities;
  doc["time"] = {{"start", config.time.start}, {"end", config.time.end}, {"samples", config.time.samples}};
  doc["tolerances"] = {{"im", config.tol.im},
                       {"root", config.tol.root},
                       {"event", config.tol.event},
                       {"residual", config.tol.residual},
                       {"event_margin", config.tol.event_margin}};
  doc["scan"] = {{"x_min", config.scan.x_min}, {"x_max", config.scan.x_max}, {"points", config.scan.points}};
  doc["frame"] = config.frame == Frame::Lab ? "lab" : "light_cone";
  return doc.dump();
}

std::string config_digest(const ScenarioConfig& config) {
  const std::string text = canonical_config(config);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot read {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("write to {} failed", path.string()));
}

}  // namespace indyn::io
