#include "indyn/finite_difference.hpp"

#include <cmath>

#include <fmt/core.h>

#include "indyn/errors.hpp"

namespace indyn {

double uniform_step(const WorldLine& line) {
  const auto& s = line.samples;
  if (s.size() < 2) throw Error(ErrorCode::GridTooShort, "need at least 2 samples");
  const double h = (s.back().t - s.front().t) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs((s[i].t - s[i - 1].t) - h) > 1e-6 * std::abs(h)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("non-uniform grid at sample {}", i));
    }
  }
  return h;
}

FdSeries fd_derivatives(const WorldLine& line, std::span<const EventRecord> events) {
  const auto& s = line.samples;
  const std::size_t n = s.size();
  if (n < 5) throw Error(ErrorCode::GridTooShort, fmt::format("line {} has {} samples, need 5", line.id, n));
  const double h = uniform_step(line);

  // Stencils need live samples; the event window only masks the outputs.
  std::vector<char> usable(n), masked(n, 0);
  const double window = kEventWindowSteps * h * (1.0 + 1e-9);
  for (std::size_t i = 0; i < n; ++i) {
    usable[i] = s[i].alive;
    for (const auto& ev : events) {
      if (ev.line_ids[0] != line.id && ev.line_ids[1] != line.id) continue;
      if (std::abs(s[i].t - ev.t_event) <= window) masked[i] = 1;
    }
  }

  FdSeries out;
  out.velocity.assign(n, std::nullopt);
  out.acceleration.assign(n, std::nullopt);
  auto x = [&](std::size_t i) { return s[i].x; };

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (masked[i] || !(usable[i - 1] && usable[i] && usable[i + 1])) continue;
    out.velocity[i] = (x(i + 1) - x(i - 1)) / (2.0 * h);
    out.acceleration[i] = (x(i + 1) - 2.0 * x(i) + x(i - 1)) / (h * h);
  }
  if (!masked[0] && usable[0] && usable[1] && usable[2]) {
    out.velocity[0] = (-3.0 * x(0) + 4.0 * x(1) - x(2)) / (2.0 * h);
    if (usable[3]) out.acceleration[0] = (2.0 * x(0) - 5.0 * x(1) + 4.0 * x(2) - x(3)) / (h * h);
  }
  const std::size_t e = n - 1;
  if (!masked[e] && usable[e] && usable[e - 1] && usable[e - 2]) {
    out.velocity[e] = (3.0 * x(e) - 4.0 * x(e - 1) + x(e - 2)) / (2.0 * h);
    if (usable[e - 3]) out.acceleration[e] = (2.0 * x(e) - 5.0 * x(e - 1) + 4.0 * x(e - 2) - x(e - 3)) / (h * h);
  }
  return out;
}

void assign_velocity_estimates(WorldLineSet& set) {
  for (auto& line : set.lines) {
    if (line.samples.size() < 5) continue;
    const auto fd = fd_derivatives(line, set.events);
    for (std::size_t i = 0; i < line.samples.size(); ++i) line.samples[i].v_est = fd.velocity[i];
  }
}

}  // namespace indyn
