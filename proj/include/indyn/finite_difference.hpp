#pragma once

#include <optional>
#include <span>
#include <vector>

#include "indyn/world_lines.hpp"

namespace indyn {

struct FdSeries {
  std::vector<std::optional<double>> velocity;
  std::vector<std::optional<double>> acceleration;
};

// Samples within this many grid steps of an event of the line have no
// derivative estimate.
inline constexpr int kEventWindowSteps = 3;

// Second-order finite differences on a uniform grid: central in the interior,
// one-sided at the ends. A derivative is undefined at samples within
// kEventWindowSteps steps of an event involving the line, and wherever the
// stencil touches a sample that is not alive. Throws GridTooShort below 5
// samples.
FdSeries fd_derivatives(const WorldLine& line, std::span<const EventRecord> events);

// Uniform step of a line's grid; throws InvalidArgument if it is not uniform.
double uniform_step(const WorldLine& line);

// Fills v_est of every sample from fd_derivatives.
void assign_velocity_estimates(WorldLineSet& set);

}  // namespace indyn
