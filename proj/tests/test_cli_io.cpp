#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "indyn/cli.hpp"
#include "indyn/config_io.hpp"
#include "indyn/errors.hpp"
#include "indyn/export.hpp"
#include "indyn/plot.hpp"
#include "indyn/simulate.hpp"

using namespace indyn;
using namespace indyn::io;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = INDYN_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("indyn_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "indyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an indyn::Error");
  return ErrorCode::InvalidArgument;
}

const char* kMinimal = R"({"model":"cm", "gamma_squared":1.0,
  "particles":[{"a":[0,0],"p":[1,0]},{"a":[0,0],"p":[-1,0]}],
  "time":{"start":-2,"end":2,"samples":401}})";

}  // namespace

TEST_SUITE("cli_io") {
  TEST_CASE("minimal document loads") {
    const auto c = load_config(kMinimal);
    CHECK(c.model == Model::CalogeroMoser);
    CHECK(c.gamma_squared == 1.0);
    CHECK(c.particles.size() == 2);
    CHECK(c.time.samples == 401);
    CHECK(c.tol.im == Tolerances{}.im);
  }

  TEST_CASE("parse errors name the problem") {
    try {
      load_config(R"({"model":"cm","particles":[{"a":[0,0],"p":[1,0]}],"time":{"start":0,"end":1,"samples":3}})");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("gamma_squared") != std::string::npos);
    }
    try {
      load_config("{\n  \"model\": \"cm\",\n  \"gamma_squared\": ,\n}");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
      load_config(R"({"model":"cm","gamma_squared":1,"colour":3,"particles":[],"time":{"start":0,"end":1,"samples":3}})");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("colour") != std::string::npos);
    }
  }

  TEST_CASE("validation errors are forwarded") {
    const char* unpaired = R"({"model":"cm","gamma_squared":1,
      "particles":[{"a":[0,0],"p":[1,0.5]},{"a":[0,0],"p":[-1,0]}],
      "time":{"start":0,"end":1,"samples":3}})";
    CHECK(code_of([&] { load_config(unpaired); }) == ErrorCode::UnpairedComplexParameter);
  }

  TEST_CASE("every field round-trips through the canonical form") {
    const auto c = load_config_file(fixture("sg_crossing.json"));
    const auto again = load_config(canonical_config(c));
    CHECK(canonical_config(again) == canonical_config(c));
    CHECK(config_digest(again) == config_digest(c));
    CHECK(config_digest(c).size() == 64);
    CHECK(again.frame == Frame::Lab);
    CHECK(again.scan.points == 512);
  }

  TEST_CASE("fuzzed documents only ever raise indyn errors") {
    std::mt19937_64 rng(1234);
    const std::string base = kMinimal;
    const std::string alphabet = "{}[]\":,0123456789.-eE abcdmpst";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int draw = 0; draw < 2000; ++draw) {
      std::string doc = base;
      std::uniform_int_distribution<int> edits(1, 6);
      for (int e = edits(rng); e > 0; --e) {
        std::uniform_int_distribution<std::size_t> pos(0, doc.size() - 1);
        switch (rng() % 3) {
          case 0:
            doc[pos(rng)] = alphabet[pick(rng)];
            break;
          case 1:
            doc.erase(pos(rng), 1);
            break;
          default:
            doc.insert(pos(rng), 1, alphabet[pick(rng)]);
        }
      }
      try {
        load_config(doc);
      } catch (const Error&) {
      }
    }
  }

  TEST_CASE("CSV export of an empty set is the header only") {
    CHECK(export_csv({}) == "t,line_id,x,v_est,alive\n");
    CHECK(export_events_jsonl({}).empty());
  }

  TEST_CASE("attractive pair exports one annihilation and one creation") {
    const auto set = simulate(load_config_file(fixture("cm_attractive_pair.json")));
    const auto jsonl = export_events_jsonl(set);
    CHECK(count(jsonl, "\"kind\":\"annihilation\"") == 1);
    CHECK(count(jsonl, "\"kind\":\"creation\"") == 1);
    const auto parsed = parse_events_jsonl(jsonl);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].t_event == set.events[0].t_event);
  }

  TEST_CASE("CSV and JSONL round trips are byte-identical") {
    const auto set = simulate(load_config_file(fixture("cm_attractive_pair.json")));
    const auto csv = export_csv(set);
    CHECK(export_csv(parse_csv(csv)) == csv);
    WorldLineSet events_only;
    events_only.events = parse_events_jsonl(export_events_jsonl(set));
    CHECK(export_events_jsonl(events_only) == export_events_jsonl(set));
    CHECK(code_of([] { parse_csv("t,x\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_csv("t,line_id,x,v_est,alive\n0,0,abc,,1\n"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("plots: empty, with gaps, and unbroken") {
    auto svg = emit_plot({});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count(svg, "class=\"tick\"") == 10);
    CHECK(count(svg, "<polyline") == 0);
    CHECK(count(svg, "<circle") == 0);

    svg = emit_plot(simulate(load_config_file(fixture("cm_attractive_pair.json"))));
    CHECK(count(svg, "class=\"worldline\"") == 2);
    CHECK(count(svg, "<polyline") == 4);
    CHECK(count(svg, "<circle class=\"event\"") == 2);

    svg = emit_plot(simulate(load_config_file(fixture("goldfish_billiard.json"))));
    CHECK(count(svg, "class=\"worldline\"") == 6);
    CHECK(count(svg, "<polyline") == 6);
    CHECK(count(svg, "<circle") == 0);
  }

  TEST_CASE("CLI: simulate writes three files deterministically") {
    const auto dir = scratch_dir("simulate");
    REQUIRE(cli({"simulate", fixture("cm_attractive_pair.json"), "--out", (dir / "a").string()}) == kExitOk);
    REQUIRE(cli({"simulate", fixture("cm_attractive_pair.json"), "--out", (dir / "b").string()}) == kExitOk);
    for (const char* name : {"trajectories.csv", "events.jsonl", "metadata.json"}) {
      REQUIRE(fs::exists(dir / "a" / name));
      CHECK(read_text_file(dir / "a" / name) == read_text_file(dir / "b" / name));
    }
    const auto metadata = read_text_file(dir / "a" / "metadata.json");
    CHECK(metadata.find(config_digest(load_config_file(fixture("cm_attractive_pair.json")))) != std::string::npos);
    CHECK(metadata.find("\"version\": \"0.1.0\"") != std::string::npos);
  }

  TEST_CASE("CLI: INDYN_OUT sets the default output directory") {
    const auto dir = scratch_dir("env");
    setenv("INDYN_OUT", dir.string().c_str(), 1);
    const int code = cli({"simulate", fixture("sg_single.json")});
    unsetenv("INDYN_OUT");
    CHECK(code == kExitOk);
    CHECK(fs::exists(dir / "trajectories.csv"));
  }

  TEST_CASE("CLI: exit codes") {
    std::string out, err;
    CHECK(cli({"frobnicate"}, &out, &err) == kExitInput);
    CHECK(err.find("simulate") != std::string::npos);
    CHECK(cli({}, &out, &err) == kExitInput);
    CHECK(cli({"--version"}, &out) == kExitOk);
    CHECK(out.find("0.1.0") != std::string::npos);
    CHECK(cli({"--help"}, &out) == kExitOk);
    CHECK(cli({"simulate", fixture("missing.json")}) == kExitInput);
    CHECK(cli({"verify", fixture("cm_small.json")}, &out) == kExitOk);
    CHECK(out.find("\"passed\": true") != std::string::npos);
    CHECK(cli({"verify", fixture("cm_small.json"), "--trajectories", fixture("corrupted_small.csv")}, &out) ==
          kExitVerification);
    CHECK(out.find("identity deviation") != std::string::npos);
    CHECK(cli({"events", fixture("cm_attractive_pair.json")}, &out) == kExitOk);
    CHECK(count(out, "annihilation") == 1);
    CHECK(count(out, "creation") == 1);
  }

  TEST_CASE("CLI: numerical failures exit with 3") {
    // A root far outside the scan window cannot be found.
    const auto dir = scratch_dir("numerical");
    write_text_file(dir / "far.json", R"({"model":"sinh_gordon","particles":[{"a":[100000,0],"p":[1,0],"epsilon":-1}],
      "time":{"start":0,"end":1,"samples":5},"scan":{"x_min":-1,"x_max":1,"points":16}})");
    CHECK(cli({"events", (dir / "far.json").string()}) == kExitNumerical);
  }

  TEST_CASE("CLI: plot writes an SVG") {
    const auto dir = scratch_dir("plot");
    CHECK(cli({"plot", fixture("cm_attractive_pair.json"), "--svg", (dir / "pair.svg").string(), "--width", "800"}) ==
          kExitOk);
    const auto svg = read_text_file(dir / "pair.svg");
    CHECK(svg.find("width=\"800\"") != std::string::npos);
  }
}
