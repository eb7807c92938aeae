#include "indyn/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/goldfish.hpp"
#include "indyn/spectral.hpp"

namespace indyn::verify {

std::vector<double> newton_rhs(Model model, std::span<const double> x, std::span<const double> v,
                               double gamma_squared) {
  const std::size_t n = x.size();
  double scale = 1.0;
  for (double xi : x) scale = std::max(scale, 1.0 + std::abs(xi));
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = x[j] - x[k];
      if (std::abs(d) <= 1e-6 * scale) {
        throw Error(ErrorCode::ParticleCoincidence, fmt::format("particles {} and {} at distance {}", j, k, d));
      }
      switch (model) {
        case Model::CalogeroMoser:
          out[j] += 2.0 * gamma_squared / (-d * d * d);
          break;
        case Model::RuijsenaarsSchneider: {
          const double pole = gamma_squared - d * d;
          if (std::abs(pole) < 1e-8) {
            throw Error(ErrorCode::RsPoleProximity, fmt::format("|x_{} - x_{}| = |gamma| within 1e-8", j, k));
          }
          out[j] += 2.0 * gamma_squared * v[j] * v[k] / (d * pole);
          break;
        }
        case Model::Goldfish:
          out[j] += 2.0 * v[j] * v[k] / d;
          break;
        case Model::SinhGordon:
          throw Error(ErrorCode::InvalidArgument, "no explicit Newton equation for sinh_gordon");
      }
    }
  }
  return out;
}

VerificationReport newton_residual(Model model, const WorldLineSet& lines, double gamma_squared,
                                   double event_margin) {
  if (model == Model::SinhGordon) {
    throw Error(ErrorCode::InvalidArgument, "no explicit Newton equation for sinh_gordon");
  }
  VerificationReport report;
  const std::size_t n = lines.lines.size();
  report.newton_residual.assign(n, 0.0);
  if (n == 0) return report;

  std::vector<FdSeries> fd;
  fd.reserve(n);
  for (const auto& line : lines.lines) fd.push_back(fd_derivatives(line, lines.events));
  const std::size_t samples = lines.lines.front().samples.size();

  std::vector<double> x(n), v(n), a(n);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples; ++i) {
    const double t = lines.lines.front().samples[i].t;
    bool usable = true;
    for (const auto& ev : lines.events) {
      if (std::abs(t - ev.t_event) < event_margin) usable = false;
    }
    for (std::size_t j = 0; j < n && usable; ++j) {
      if (!fd[j].velocity[i] || !fd[j].acceleration[i]) {
        usable = false;
        break;
      }
      x[j] = lines.lines[j].samples[i].x;
      v[j] = *fd[j].velocity[i];
      a[j] = *fd[j].acceleration[i];
    }
    if (!usable) {
      ++report.samples_excluded;
      continue;
    }
    const auto rhs = newton_rhs(model, x, v, gamma_squared);
    for (std::size_t j = 0; j < n; ++j) {
      const double r = std::abs(a[j] - rhs[j]);
      report.newton_residual[j] = std::max(report.newton_residual[j], r);
      worst = std::max(worst, r);
    }
    ++report.samples_used;
  }
  if (report.samples_used > 0) report.max_newton_residual = worst;
  if (report.samples_excluded > 0) {
    report.notes.push_back(fmt::format("{} interior samples excluded (dead lines or event windows)",
                                       report.samples_excluded));
  }
  return report;
}

namespace {

bool all_real(const ScenarioConfig& config) {
  return std::all_of(config.particles.begin(), config.particles.end(),
                     [](const ParticleParams& p) { return p.a.imag() == 0.0 && p.p.imag() == 0.0; });
}

double slope_deviation(const ScenarioConfig& config, double t) {
  std::vector<double> slopes, momenta;
  for (const auto& [value, velocity] : spectral::eigenvalue_velocities(config, t)) {
    slopes.push_back(velocity.real());
  }
  for (const auto& particle : config.particles) momenta.push_back(particle.p.real());
  std::sort(slopes.begin(), slopes.end());
  std::sort(momenta.begin(), momenta.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) worst = std::max(worst, std::abs(slopes[i] - momenta[i]));
  return worst;
}

}  // namespace

VerificationReport conservation_report(Model model, const WorldLineSet& lines, const ScenarioConfig& config,
                                       double asymptotic_time) {
  VerificationReport report;
  if (lines.lines.empty()) return report;
  const std::size_t samples = lines.lines.front().samples.size();

  Complex offset(0.0, 0.0), rate(0.0, 0.0);
  bool has_identity = true;
  switch (model) {
    case Model::CalogeroMoser:
    case Model::RuijsenaarsSchneider:
      for (const auto& particle : config.particles) {
        offset += particle.a;
        rate += particle.p;
      }
      break;
    case Model::Goldfish:
      for (double x0 : config.init_positions) offset += x0;
      for (double v0 : config.init_velocities) rate += v0;
      break;
    case Model::SinhGordon:
      has_identity = false;
      break;
  }

  if (has_identity) {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = lines.lines.front().samples[i].t;
      double sum = 0.0, scale = 1.0;
      for (const auto& line : lines.lines) {
        sum += line.samples[i].x;
        scale = std::max(scale, 1.0 + std::abs(line.samples[i].x));
      }
      const double expected = (offset + t * rate).real();
      worst = std::max(worst, std::abs(sum - expected) / scale);
      ++report.samples_used;
    }
    report.identity_deviation = worst;
  }

  if ((model == Model::CalogeroMoser || model == Model::RuijsenaarsSchneider) && all_real(config)) {
    report.momentum_deviation =
        std::max(slope_deviation(config, -asymptotic_time), slope_deviation(config, asymptotic_time));
  }
  for (const auto& [name, value] : lines.constants) {
    report.notes.push_back(fmt::format("{} = {:.17g}", name, value));
  }
  return report;
}

double oracle_distance(const ScenarioConfig& config, const WorldLineSet& lines, double span, double tol) {
  if (lines.lines.empty()) return 0.0;
  const auto& first = lines.lines.front().samples;
  if (first.empty()) return 0.0;
  const double t0 = first.front().t;
  const double t1 = t0 + span;

  std::vector<double> x0, v0;
  for (const auto& line : lines.lines) {
    if (!line.samples.front().alive) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("line {} is not alive at t = {}", line.id, t0));
    }
    x0.push_back(line.samples.front().x);
  }
  if (config.model == Model::Goldfish) {
    const auto init = goldfish::GoldfishInit::from(config);
    for (double x : x0) v0.push_back(goldfish::root_velocity(init, x, t0));
  } else if (config.model == Model::SinhGordon) {
    throw Error(ErrorCode::InvalidArgument, "no ODE oracle for sinh_gordon");
  } else {
    const auto flows = spectral::eigenvalue_velocities(config, t0);
    for (double x : x0) {
      const auto nearest = std::min_element(flows.begin(), flows.end(), [x](const auto& a, const auto& b) {
        return std::abs(a.first - x) < std::abs(b.first - x);
      });
      v0.push_back(nearest->second.real());
    }
  }

  std::vector<double> times;
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < first.size() && first[i].t <= t1; ++i) {
    times.push_back(first[i].t);
    indices.push_back(i);
  }
  const double end = std::min(t1, times.back());
  if (!(end > t0)) return 0.0;
  const auto ode = ode_oracle(config.model, x0, v0, config.gamma_squared, t0, end, tol, times);
  double worst = 0.0;
  for (std::size_t s = 0; s < ode.times.size(); ++s) {
    for (std::size_t j = 0; j < lines.lines.size(); ++j) {
      const auto& sample = lines.lines[j].samples[indices[s]];
      if (!sample.alive) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("line {} dies inside the oracle span", lines.lines[j].id));
      }
      worst = std::max(worst, std::abs(sample.x - ode.positions[s][j]));
    }
  }
  return worst;
}

}  // namespace indyn::verify
