#include "indyn/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "indyn/config_io.hpp"
#include "indyn/errors.hpp"
#include "indyn/export.hpp"
#include "indyn/plot.hpp"
#include "indyn/simulate.hpp"
#include "indyn/verify.hpp"

namespace indyn::io {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Thresholds applied by `verify`.
constexpr double kIdentityTolerance = 1e-10;
constexpr double kOdeTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-6;
constexpr double kOracleSpan = 1.0;

struct Options {
  std::string config;
  std::string out_dir;
  std::string trajectories;
  std::string events;
  std::string report;
  std::string svg;
  int width = 640;
  int height = 480;
};

int cmd_simulate(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = load_config_file(opt.config);
  const WorldLineSet lines = simulate(config);
  fs::path dir = opt.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("INDYN_OUT");
    dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  write_text_file(dir / "trajectories.csv", export_csv(lines));
  write_text_file(dir / "events.jsonl", export_events_jsonl(lines));
  write_text_file(dir / "metadata.json", export_metadata({config, lines}));
  out << fmt::format("{} lines, {} events written to {}\n", lines.lines.size(), lines.events.size(), dir.string());
  return kExitOk;
}

json optional_json(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

int cmd_verify(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = load_config_file(opt.config);
  WorldLineSet lines;
  if (opt.trajectories.empty()) {
    lines = simulate(config);
  } else {
    lines = parse_csv(read_text_file(opt.trajectories));
    lines.events = opt.events.empty() ? simulate(config).events : parse_events_jsonl(read_text_file(opt.events));
  }

  verify::VerificationReport report = verify::conservation_report(config.model, lines, config);
  std::vector<std::string> failures;
  if (config.model != Model::SinhGordon && !lines.lines.empty()) {
    verify::VerificationReport newton;
    try {
      newton = verify::newton_residual(config.model, lines, config.gamma_squared, config.tol.event_margin);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParticleCoincidence && e.code() != ErrorCode::RsPoleProximity) throw;
      failures.push_back(e.what());
    }
    report.newton_residual = newton.newton_residual;
    report.max_newton_residual = newton.max_newton_residual;
    report.samples_excluded = newton.samples_excluded;
    report.notes.insert(report.notes.end(), newton.notes.begin(), newton.notes.end());
    if (newton.max_newton_residual && *newton.max_newton_residual > config.tol.residual) {
      failures.push_back(fmt::format("Newton residual {} > {}", *newton.max_newton_residual, config.tol.residual));
    }
    const bool all_alive = std::all_of(lines.lines.begin(), lines.lines.end(), [](const WorldLine& line) {
      return std::all_of(line.samples.begin(), line.samples.end(), [](const LineSample& s) { return s.alive; });
    });
    if (all_alive && lines.events.empty()) {
      report.oracle_distance = verify::oracle_distance(config, lines, kOracleSpan, kOdeTolerance);
      if (*report.oracle_distance > kOracleTolerance) {
        failures.push_back(fmt::format("oracle distance {} > {}", *report.oracle_distance, kOracleTolerance));
      }
    }
  }
  if (report.identity_deviation && *report.identity_deviation > kIdentityTolerance) {
    failures.push_back(fmt::format("identity deviation {} > {}", *report.identity_deviation, kIdentityTolerance));
  }
  for (const auto& line : lines.lines) {
    for (const auto& s : line.samples) {
      if (!std::isfinite(s.t) || !std::isfinite(s.x) || (s.v_est && !std::isfinite(*s.v_est))) {
        failures.push_back(fmt::format("non-finite sample on line {}", line.id));
        break;
      }
    }
  }

  json doc;
  doc["model"] = std::string(model_name(config.model));
  doc["newton_residual"] = report.newton_residual;
  doc["max_newton_residual"] = optional_json(report.max_newton_residual);
  doc["identity_deviation"] = optional_json(report.identity_deviation);
  doc["hamiltonian_drift"] = optional_json(report.hamiltonian_drift);
  doc["oracle_distance"] = optional_json(report.oracle_distance);
  doc["momentum_deviation"] = optional_json(report.momentum_deviation);
  doc["samples_excluded"] = report.samples_excluded;
  doc["notes"] = report.notes;
  doc["failures"] = failures;
  doc["passed"] = failures.empty();
  const std::string text = doc.dump(2) + "\n";
  if (opt.report.empty()) {
    out << text;
  } else {
    write_text_file(opt.report, text);
  }
  return failures.empty() ? kExitOk : kExitVerification;
}

int cmd_plot(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = load_config_file(opt.config);
  const WorldLineSet lines = simulate(config);
  write_text_file(opt.svg, emit_plot(lines, {opt.width, opt.height}));
  out << fmt::format("wrote {}\n", opt.svg);
  return kExitOk;
}

int cmd_events(const Options& opt, std::ostream& out) {
  const ScenarioConfig config = load_config_file(opt.config);
  const WorldLineSet lines = simulate(config);
  out << fmt::format("{:<13} {:>24} {:>24} {}\n", "kind", "t_event", "bracket_width", "line_ids");
  for (const auto& ev : lines.events) {
    out << fmt::format("{:<13} {:>24} {:>24} {},{}\n", event_kind_name(ev.kind), format_number(ev.t_event),
                       format_number(ev.t_bracket_width), ev.line_ids[0], ev.line_ids[1]);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Induced dynamics: world lines of roots of time-dependent equations", std::string(kToolName)};
  app.set_version_flag("--version", fmt::format("{} {}", kToolName, kToolVersion));
  app.require_subcommand(1);

  Options opt;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate and write trajectories, events and metadata");
  simulate_cmd->add_option("config", opt.config, "Scenario JSON")->required();
  simulate_cmd->add_option("--out", opt.out_dir, "Output directory (default $INDYN_OUT or .)");

  auto* verify_cmd = app.add_subcommand("verify", "Check identities, Newton residuals and the ODE oracle");
  verify_cmd->add_option("config", opt.config, "Scenario JSON")->required();
  verify_cmd->add_option("--trajectories", opt.trajectories, "Verify this CSV instead of a fresh simulation");
  verify_cmd->add_option("--events", opt.events, "Events JSONL matching --trajectories");
  verify_cmd->add_option("--report", opt.report, "Write the JSON report here instead of stdout");

  auto* plot_cmd = app.add_subcommand("plot", "Write an SVG world-line plot");
  plot_cmd->add_option("config", opt.config, "Scenario JSON")->required();
  plot_cmd->add_option("--svg", opt.svg, "Output SVG file")->required();
  plot_cmd->add_option("--width", opt.width, "Width in pixels");
  plot_cmd->add_option("--height", opt.height, "Height in pixels");

  auto* events_cmd = app.add_subcommand("events", "Print the event table");
  events_cmd->add_option("config", opt.config, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInput;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(opt, out);
    if (*verify_cmd) return cmd_verify(opt, out);
    if (*plot_cmd) return cmd_plot(opt, out);
    if (*events_cmd) return cmd_events(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return category(e.code()) == ErrorCategory::Numerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  err << app.help();
  return kExitInput;
}

}  // namespace indyn::io
