#include "indyn/scenario.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "indyn/errors.hpp"

namespace indyn {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool close(Complex x, Complex y) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= kPairingTolerance * scale;
}

bool is_real(Complex z) { return std::abs(z.imag()) <= kPairingTolerance * std::max(1.0, std::abs(z)); }

void check_pairing(const ScenarioConfig& config) {
  const auto& ps = config.particles;
  std::vector<bool> used(ps.size(), false);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (used[i]) continue;
    if (is_real(ps[i].a) && is_real(ps[i].p)) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t k = i + 1; k < ps.size() && !found; ++k) {
      if (used[k]) continue;
      const bool same_sign = config.model != Model::SinhGordon || ps[k].epsilon == ps[i].epsilon;
      if (close(ps[k].a, std::conj(ps[i].a)) && close(ps[k].p, std::conj(ps[i].p)) && same_sign) {
        used[i] = used[k] = true;
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::UnpairedComplexParameter,
                  fmt::format("particle {} has complex data without a conjugate partner", i));
    }
  }
}

void check_distinct_momenta(const ScenarioConfig& config) {
  const auto& ps = config.particles;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    for (std::size_t k = j + 1; k < ps.size(); ++k) {
      if (close(ps[j].p, ps[k].p)) {
        throw Error(ErrorCode::DegenerateMomenta,
                    fmt::format("particles {} and {} share momentum", j, k));
      }
    }
  }
}

void check_time_grid(const TimeGrid& grid) {
  if (grid.samples < 2 || !std::isfinite(grid.start) || !std::isfinite(grid.end) ||
      !(grid.start < grid.end)) {
    throw Error(ErrorCode::EmptyTimeGrid,
                fmt::format("need start < end and at least 2 samples (got [{}, {}], {})",
                            grid.start, grid.end, grid.samples));
  }
}

void check_tolerances(const Tolerances& tol) {
  for (double v : {tol.im, tol.root, tol.event, tol.residual}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidScenario, "tolerances must be positive and finite");
    }
  }
  if (!(tol.event_margin >= 0.0) || !std::isfinite(tol.event_margin)) {
    throw Error(ErrorCode::InvalidScenario, "event_margin must be non-negative");
  }
}

}  // namespace

std::string_view model_name(Model model) {
  switch (model) {
    case Model::CalogeroMoser: return "cm";
    case Model::RuijsenaarsSchneider: return "rs";
    case Model::Goldfish: return "goldfish";
    case Model::SinhGordon: return "sinh_gordon";
  }
  return "unknown";
}

double TimeGrid::at(std::size_t i) const {
  if (i + 1 == samples) return end;
  return start + static_cast<double>(i) * step();
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(samples);
  for (std::size_t i = 0; i < samples; ++i) out[i] = at(i);
  return out;
}

ScenarioConfig validate_scenario(ScenarioConfig config) {
  check_time_grid(config.time);
  check_tolerances(config.tol);

  if (config.model == Model::Goldfish) {
    const auto& x0 = config.init_positions;
    const auto& v0 = config.init_velocities;
    if (x0.empty()) throw Error(ErrorCode::InvalidScenario, "goldfish needs at least one particle");
    if (x0.size() != v0.size()) {
      throw Error(ErrorCode::InvalidScenario,
                  fmt::format("{} positions but {} velocities", x0.size(), v0.size()));
    }
    for (std::size_t j = 0; j < x0.size(); ++j) {
      if (!std::isfinite(x0[j]) || !std::isfinite(v0[j])) {
        throw Error(ErrorCode::InvalidScenario, "non-finite initial data");
      }
      for (std::size_t k = j + 1; k < x0.size(); ++k) {
        if (close(x0[j], x0[k])) {
          throw Error(ErrorCode::CoincidentPositions,
                      fmt::format("particles {} and {} start at the same position", j, k));
        }
      }
    }
    return config;
  }

  if (config.particles.empty()) {
    throw Error(ErrorCode::InvalidScenario, "scenario needs at least one particle");
  }
  for (const auto& particle : config.particles) {
    if (!is_finite(particle.a) || !is_finite(particle.p)) {
      throw Error(ErrorCode::InvalidScenario, "non-finite particle data");
    }
  }
  if (!std::isfinite(config.gamma_squared)) {
    throw Error(ErrorCode::InvalidScenario, "gamma_squared must be finite");
  }

  if (config.model == Model::SinhGordon) {
    for (std::size_t i = 0; i < config.particles.size(); ++i) {
      const auto& particle = config.particles[i];
      if (particle.epsilon != 1 && particle.epsilon != -1) {
        throw Error(ErrorCode::InvalidScenario, fmt::format("particle {} epsilon must be +1 or -1", i));
      }
      if (!(particle.p.real() > 0.0)) {
        throw Error(ErrorCode::NonPositiveRealMomentum,
                    fmt::format("particle {} has Re p = {}", i, particle.p.real()));
      }
    }
    const auto& scan = config.scan;
    if (!(scan.x_min < scan.x_max) || scan.points < 2 || !std::isfinite(scan.x_min) ||
        !std::isfinite(scan.x_max)) {
      throw Error(ErrorCode::InvalidScenario, "scan window needs x_min < x_max and >= 2 points");
    }
  } else {
    check_distinct_momenta(config);
  }
  check_pairing(config);
  return config;
}

}  // namespace indyn
